#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "cyclo/deployed.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/format.hpp"
#include "cyclo/goldkim.hpp"
#include "cyclo/lattice.hpp"
#include "cyclo/numeric.hpp"
#include "cyclo/real_plus.hpp"
#include "cyclo/subset_convolution.hpp"

namespace cyclo::cli {

namespace {

struct Options {
    bool json = false;
    int bits = kDefaultBits;
    double tol = 1e-8;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

// A command's result: the structured document plus the checks it ran.
struct Report {
    Json doc = Json::object();
    std::vector<Check> checks;
    std::ostringstream human;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    void add(std::string name, bool ok, std::string detail = {})
    {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

std::string join(const std::vector<BigInt>& xs)
{
    std::string s;
    for (const auto& x : xs)
        s += (s.empty() ? "" : " ") + x.str();
    return s.empty() ? "-" : s;
}

Json big_array(const std::vector<BigInt>& xs)
{
    Json a = Json::array();
    for (const auto& x : xs)
        a.push_back(x.str());
    return a;
}

std::string fmt_double(const Real& x)
{
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << x.convert_to<double>();
    return os.str();
}

std::string level_label(const FieldSpec& f, Level omega)
{
    std::string s = "{";
    for (int j : level_members(omega))
        s += (s.size() > 1 ? "," : "") + std::to_string(f.factor(j).q);
    return s + "}";
}

// x and y differ by a root of unity at every embedding; returns the largest
// log-modulus gap seen.
bool agree_mod_roots(const UnitSymbol& x, const UnitSymbol& y, int bits, double tol, Real& worst)
{
    PrecisionScope scope(bits);
    const auto& f = *x.field();
    worst = 0;
    bool ok = true;
    for (auto k : embedding_residues(f)) {
        const auto px = evaluate(x, k, bits);
        const auto py = evaluate(y, k, bits);
        const Real gap = abs(px.log_abs - py.log_abs);
        if (gap > worst)
            worst = gap;
        if (gap > Real(tol)) {
            ok = false;
            continue;
        }
        if (!root_of_unity_quotient(px, py, f.n()))
            ok = false;
    }
    return ok;
}

UnitSymbol random_unit(const FieldRef& f, std::mt19937_64& rng)
{
    UnitSymbol x(f);
    std::uniform_int_distribution<int> exps(-3, 3);
    std::uniform_int_distribution<Level> lv(1, f->full_level());
    for (int t = 0; t < 4; ++t) {
        const Level omega = lv(rng);
        std::vector<std::int32_t> a;
        for (int j : level_members(omega))
            a.push_back(static_cast<std::int32_t>(rng() % static_cast<std::uint64_t>(f->factor(j).phi)));
        const int e = exps(rng);
        x.add(omega, a, e);
        if (level_size(omega) == 1)
            x.add(omega, {0}, -e);
    }
    return x;
}

void finish_checks(Report& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    r.doc["checks"] = checks;
    r.doc["passed"] = r.passed();
    if (!r.checks.empty()) {
        std::size_t width = 0;
        for (const auto& c : r.checks)
            width = std::max(width, c.name.size());
        r.human << "checks:\n";
        for (const auto& c : r.checks)
            r.human << "  " << std::left << std::setw(static_cast<int>(width + 2)) << c.name << (c.passed ? "pass" : "FAIL")
                    << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
        r.human << "verdict: " << (r.passed() ? "pass" : "FAIL") << '\n';
    }
}

// ---------------------------------------------------------------- gk-basis

void cmd_gk_basis(std::int64_t n, Report& r)
{
    auto f = factorize_conductor(n);
    const auto b = enumerate_basis(*f);
    r.doc = basis_to_json(*f, b);
    r.human << "Gold-Kim basis of Q(zeta_" << n << "), prime powers";
    for (const auto& pf : f->factors())
        r.human << ' ' << pf.q;
    r.human << '\n';
    for (std::size_t i = 0; i < b.size(); ++i)
        r.human << std::right << std::setw(5) << i + 1 << "  " << format_index(b[i]) << '\n';
    const auto expected = f->phi_n() / 2 - 1;
    r.human << "count " << b.size() << ", expected phi(n)/2-1 = " << expected << '\n';
    r.add("cardinality", static_cast<std::int64_t>(b.size()) == expected);
}

// ---------------------------------------------------------------- decompose

void cmd_decompose(std::int64_t n, const std::string& text, const Options& o, Report& r)
{
    auto f = factorize_conductor(n);
    const auto x = parse_symbol(f, text);
    if (!is_unit(x))
        throw NonUnitError("not a unit: " + to_string(x) + " (singleton atoms need exponents summing to 0)");
    GoldKim gk(f);
    const auto v = gk.decompose(x);
    Real worst;
    const bool ok = agree_mod_roots(x, reconstruct(f, v), o.bits, o.tol, worst);
    r.doc = Json{{"n", n}, {"symbol", to_string(x)}, {"coordinates", exponents_to_json(v)},
                 {"residual", worst.convert_to<double>()}};
    r.human << format_exponents(v) << '\n';
    r.human << "residual " << fmt_double(worst) << " over " << embedding_residues(*f).size() << " embeddings\n";
    r.add("numeric reconstruction", ok, "max log-modulus gap " + fmt_double(worst));
}

// ---------------------------------------------------------------- deployed

GKIndex to_input_order(const SubfieldSpec& s, const GKIndex& g)
{
    const auto members = level_members(g.omega);
    std::vector<std::pair<int, std::int32_t>> m;
    for (std::size_t i = 0; i < members.size(); ++i)
        m.emplace_back(s.perm[members[i]], g.tuple[i]);
    std::sort(m.begin(), m.end());
    GKIndex out;
    for (const auto& [pos, v] : m) {
        out.omega |= Level{1} << pos;
        out.tuple.push_back(v);
    }
    return out;
}

void cmd_deployed(std::int64_t n, const std::vector<std::int64_t>& degrees,
                  const std::vector<std::int64_t>& selector, bool verify, Report& r)
{
    const auto spec = validate_spec(n, degrees, selector);
    const auto gens = basis(spec);
    const auto& f = *spec.field;

    std::vector<bool> real_in(spec.real.size());
    Json perm = Json::array();
    for (std::size_t i = 0; i < spec.perm.size(); ++i) {
        real_in[spec.perm[i]] = spec.real[i];
        perm.push_back(spec.perm[i] + 1);
    }
    r.doc = Json{{"n", n},
                 {"degrees", degrees},
                 {"real", real_in},
                 {"real_first_order", perm},
                 {"degree", spec.degree()},
                 {"totally_real", spec.totally_real()},
                 {"unit_rank", spec.unit_rank()},
                 {"experimental", spec.experimental}};
    if (!selector.empty())
        r.doc["two_subgroup"] = selector;

    r.human << "K inside Q(zeta_" << n << "): degrees";
    for (std::size_t j = 0; j < degrees.size(); ++j)
        r.human << ' ' << f.factor(static_cast<int>(j)).q << ':' << degrees[j] << (real_in[j] ? "(real)" : "(non-real)");
    r.human << "\n[K:Q] = " << spec.degree() << ", " << (spec.totally_real() ? "totally real" : "totally imaginary")
            << ", r1+r2-1 = " << spec.unit_rank() << '\n';
    if (spec.experimental)
        r.human << "note: 2-part above 8, construction is experimental\n";

    std::optional<DeployedReport> rep;
    if (verify) {
        GoldKim gk(spec.work);
        rep = verify_basis(spec, gens, gk, true);
    }

    Json list = Json::array();
    r.human << "generators (" << gens.size() << "):\n";
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto& g = gens[i];
        const auto level = spec.to_input_level(g.omega);
        GKIndex shift{g.omega, g.tuple};
        const auto shift_in = to_input_order(spec, shift).tuple;
        const auto corr = to_input_order(spec, g.corresponding);
        Json e{{"class", to_string(g.kind)},
               {"level", index_to_json(corr)["level"]},
               {"shift", shift_in},
               {"corresponding", format_index(corr)},
               {"least_exempt", g.least_exempt}};
        if (g.kind == GeneratorClass::atom_norm)
            e["k"] = g.k;
        if (rep)
            e["coefficient"] = rep->pinned[i];
        list.push_back(e);
        r.human << "  " << std::left << std::setw(10) << to_string(g.kind) << std::setw(12) << level_label(f, level)
                << (g.kind == GeneratorClass::atom_norm ? "k=" + std::to_string(g.k) : std::string("   "))
                << "  a=" << std::setw(12) << format_tuple(shift_in) << " -> " << format_index(corr);
        if (rep)
            r.human << "  coefficient " << rep->pinned[i];
        if (g.least_exempt)
            r.human << "  (k = t-1 class)";
        r.human << '\n';
    }
    r.doc["generators"] = list;
    if (!rep)
        return;

    r.add("cardinality", rep->count_ok(),
          std::to_string(rep->generators) + " generators, r1+r2-1 = " + std::to_string(rep->expected) +
              ", block sizes sum to " + std::to_string(rep->predicted));
    r.add("pinned coefficients", rep->pins_ok,
          rep->invalid_pins ? std::to_string(rep->invalid_pins) + " designated tuple(s) outside the index set" : "");
    r.add("injectivity", rep->injective);
    r.add("direct factor", rep->lattice.direct && rep->lattice.independent, "SNF divisors " + join(rep->lattice.divisors));
    r.add("triangularity", rep->triangularity.passed,
          std::to_string(rep->triangularity.violations.size()) + " violations, " +
              std::to_string(rep->triangularity.exceptions.size()) + " exempt column(s)");
    r.add("numeric rank", rep->numeric_rank && *rep->numeric_rank == static_cast<int>(rep->generators),
          rep->numeric_rank ? std::to_string(*rep->numeric_rank) : "-");
    r.doc["snf_divisors"] = big_array(rep->lattice.divisors);
    if (auto c = contraction_matches(spec)) {
        r.add("real contraction", *c, "lattice equals that of the real contraction");
        r.doc["real_contraction"] = *c;
    } else {
        r.doc["real_contraction"] = nullptr;
    }
}

// ---------------------------------------------------------------- real-basis

std::vector<BigInt> projection_divisors(const GoldKim& gk, const RealBasis& rb)
{
    std::vector<std::vector<std::int64_t>> cols;
    for (const auto& g : rb.generators) {
        std::vector<std::int64_t> v(gk.size(), 0);
        for (const auto& [idx, e] : g.gk_image)
            v[gk.position(idx)] = e;
        cols.push_back(std::move(v));
    }
    if (cols.empty())
        return {};
    return smith_normal_form(IntegerMatrix::from_columns(cols, gk.size())).divisors;
}

void real_basis_checks(const GoldKim& gk, const Options& o, Report& r, const std::string& prefix, Json* doc)
{
    const auto& f = *gk.field();
    const auto rb = real_basis(gk, o.bits);
    const auto expected = f.phi_n() / 2 - 1;
    std::vector<EmbeddingVector> vs;
    bool kinds = true;
    Json list = Json::array();
    for (const auto& g : rb.generators) {
        vs.push_back(real_embedding(g, o.bits));
        kinds = kinds && g.kind == prescribed_kind(f, g.source);
        list.push_back(Json{{"type", to_string(g.kind)}, {"source", format_index(g.source)},
                            {"image", exponents_to_json(g.gk_image)}});
    }
    const int rank = vs.empty() ? 0 : numeric_rank(vs, o.tol);
    const auto div = projection_divisors(gk, rb);
    std::vector<BigInt> want(static_cast<std::size_t>(expected), 1);
    if (!f.is_prime_power() && !want.empty())
        want.back() = 2;

    if (doc) {
        (*doc)["generators"] = list;
        (*doc)["multiplier"] = rb.multiplier ? Json(format_index(*rb.multiplier)) : Json(nullptr);
        (*doc)["multiplier_is_literal"] = rb.multiplier_is_literal;
        (*doc)["snf_divisors"] = big_array(div);
        (*doc)["numeric_rank"] = rank;
        r.human << "real cyclotomic units of Q(zeta_" << f.n() << ")^+\n";
        if (rb.multiplier)
            r.human << "multiplier " << format_index(*rb.multiplier)
                    << (rb.multiplier_is_literal ? " (1 - zeta_n^sigma_1)" : " (first order-2 basis element)") << '\n';
        for (std::size_t i = 0; i < rb.generators.size(); ++i) {
            const auto& g = rb.generators[i];
            r.human << std::right << std::setw(5) << i + 1 << "  " << std::left << std::setw(7) << to_string(g.kind)
                    << format_index(g.source) << (g.kind == RealKind::type2 ? "  times the multiplier" : "") << '\n';
        }
    }
    r.add(prefix + "real count", static_cast<std::int64_t>(rb.generators.size()) == expected,
          std::to_string(rb.generators.size()) + " = phi(n)/2-1 = " + std::to_string(expected));
    r.add(prefix + "real numeric rank", rank == expected, std::to_string(rank));
    r.add(prefix + "real types", kinds, "measured Hasse order agrees with level parity");
    r.add(prefix + "real SNF", div == want, join(div));
}

void cmd_real_basis(std::int64_t n, const Options& o, Report& r)
{
    auto f = factorize_conductor(n);
    GoldKim gk(f);
    r.doc["n"] = n;
    real_basis_checks(gk, o, r, "", &r.doc);
}

// ---------------------------------------------------------------- block-counts

void cmd_block_counts(const std::vector<std::int64_t>& degrees, Report& r)
{
    const auto rep = block_count_check(degrees);
    r.doc = Json{{"degrees", degrees},
                 {"sum_f_complex", rep.sum_f_complex.str()},
                 {"g_complex_full_minus_one", rep.g_complex_full_minus_one.str()},
                 {"sum_f_real", rep.sum_f_real.str()},
                 {"g_real_full_minus_one", rep.g_real_full_minus_one.str()}};
    const auto gc = rep.g_complex_full_minus_one + 1;
    const auto gr = rep.g_real_full_minus_one + 1;
    r.human << "complex: sum of f_C over nonempty subsets = " << rep.sum_f_complex << ", g_C(full) - 1 = " << gc
            << " - 1\n";
    r.human << "real:    sum of f_R over nonempty subsets = " << rep.sum_f_real << ", g_R(full) - 1 = " << gr
            << " - 1\n";
    r.add("complex sum", rep.sum_complex_holds);
    r.add("real sum", rep.sum_real_holds);
    r.add("complex convolution", rep.convolution_complex_holds, "mu * g_C = f_C");
    r.add("real convolution", rep.convolution_real_holds, "mu * g_R = f_R");
}

// ---------------------------------------------------------------- verify

void verify_conductor(std::int64_t n, const Options& o, Report& r)
{
    auto f = factorize_conductor(n);
    GoldKim gk(f);
    const auto& b = gk.basis();
    const std::string p = "n=" + std::to_string(n) + " ";

    std::vector<std::int64_t> degs;
    std::vector<bool> real;
    for (const auto& pf : f->factors()) {
        degs.push_back(pf.phi);
        real.push_back(false);
    }
    std::int64_t predicted = 0;
    for (Level s = 1; s <= f->full_level(); ++s)
        predicted += predicted_block_size(degs, real, s);
    const auto expected = f->phi_n() / 2 - 1;
    r.add(p + "GK count", static_cast<std::int64_t>(b.size()) == expected && predicted == expected,
          std::to_string(b.size()) + " = " + std::to_string(expected));

    bool unit = true;
    for (const auto& g : b)
        unit = unit && gk.decompose(basis_symbol(f, g)) == ExponentVector{{g, 1}};
    r.add(p + "unit vectors", unit);

    std::mt19937_64 rng(static_cast<std::uint64_t>(n) * 7919);
    bool oracle = true;
    Real worst, gap;
    worst = 0;
    for (int t = 0; t < 20; ++t) {
        const auto x = random_unit(f, rng);
        oracle = oracle && agree_mod_roots(x, reconstruct(f, gk.decompose(x)), o.bits, o.tol, gap);
        if (gap > worst)
            worst = gap;
    }
    r.add(p + "random units", oracle, "20 samples, max gap " + fmt_double(worst));

    bool closed = true;
    std::vector<GaloisElement> gens{conjugation(*f)};
    for (int j = 0; j < f->rank(); ++j)
        gens.push_back(GaloisElement::local(*f, j, 1));
    for (const auto& g : gens)
        for (const auto& x : b) {
            const auto y = galois_act(GroupRingElement::single(g), basis_symbol(f, x));
            closed = closed && agree_mod_roots(y, reconstruct(f, gk.decompose(y)), o.bits, o.tol, gap);
        }
    r.add(p + "Galois closure", closed);

    real_basis_checks(gk, o, r, p, nullptr);

    const auto probe = f->is_prime_power() ? xi_symbol(f, 0, 1)
                                           : UnitSymbol::atom(f, f->full_level(),
                                                              std::vector<std::int32_t>(static_cast<std::size_t>(f->rank()), 0));
    const int h = hasse_order(probe, o.bits);
    r.add(p + "Hasse order", h == (f->is_prime_power() ? 1 : 2),
          std::string(f->is_prime_power() ? "xi_{q,1}" : "1 - zeta_n") + " has order " + std::to_string(h));
}

void cmd_verify(const std::vector<std::int64_t>& ns, const Options& o, Report& r)
{
    r.doc["conductors"] = ns;
    for (auto n : ns)
        verify_conductor(n, o, r);
}

int int_from_env(const char* name, int fallback)
{
    if (const char* v = std::getenv(name)) {
        try {
            return std::stoi(v);
        } catch (const std::exception&) {
            throw InputError(std::string(name) + " is not an integer");
        }
    }
    return fallback;
}

} // namespace

Result run(const std::vector<std::string>& args)
{
    Result res;
    std::ostringstream out, err;
    CLI::App app{"Bases of cyclotomic unit groups with exact verification"};
    app.require_subcommand(1);
    Options o;
    std::string format = "human";
    int bits = 0;
    app.add_option("--format", format, "human or json")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--bits", bits, "working precision in bits (default 256, or CYCLO_BITS)");
    app.add_option("--tol", o.tol, "numeric tolerance for rank and reconstruction checks");

    std::int64_t n = 0;
    std::string symbol, suite = "default";
    std::vector<std::int64_t> degrees, selector, ns;
    std::string verify_mode = "all";

    auto* gkb = app.add_subcommand("gk-basis", "list the Gold-Kim basis of Q(zeta_n)");
    gkb->add_option("--n", n, "conductor")->required();
    auto* dec = app.add_subcommand("decompose", "decompose a unit symbol in the Gold-Kim basis");
    dec->add_option("--n", n, "conductor")->required();
    dec->add_option("--symbol", symbol, "terms (<level>;<tuple>)^<e> joined by *")->required();
    auto* dep = app.add_subcommand("deployed", "basis of the cyclotomic units of a totally deployed field");
    dep->add_option("--n", n, "conductor")->required();
    dep->add_option("--degrees", degrees, "degree of K_j for each prime, ascending primes")->delimiter(',')->required();
    dep->add_option("--two-subgroup", selector, "residues generating Gal(Q(zeta_2^e)/K_j)")->delimiter(',');
    dep->add_option("--verify", verify_mode, "all or none")->check(CLI::IsMember({"all", "none"}));
    auto* rpl = app.add_subcommand("real-basis", "basis of the real cyclotomic units");
    rpl->add_option("--n", n, "conductor")->required();
    auto* lem = app.add_subcommand("block-counts", "block-count identities for a degree vector");
    lem->add_option("--d", degrees, "degrees")->delimiter(',')->required();
    auto* ver = app.add_subcommand("verify", "run the verification pipeline over several conductors");
    ver->add_option("--suite", suite, "named suite")->check(CLI::IsMember({"default"}));
    ver->add_option("--n", ns, "conductors instead of the suite")->delimiter(',');

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        res.out = out.str();
        res.err = err.str();
        res.code = code == 0 ? kPass : kInputError;
        return res;
    }

    Report r;
    try {
        o.json = format == "json";
        o.bits = bits > 0 ? bits : int_from_env("CYCLO_BITS", kDefaultBits);
        if (o.bits < 64 || o.bits > kMaxBits)
            throw InputError("--bits must lie in [64, " + std::to_string(kMaxBits) + "]");
        if (!(o.tol > 0))
            throw InputError("--tol must be positive");
        if (gkb->parsed()) {
            cmd_gk_basis(n, r);
        } else if (dec->parsed()) {
            cmd_decompose(n, symbol, o, r);
        } else if (dep->parsed()) {
            cmd_deployed(n, degrees, selector, verify_mode == "all", r);
        } else if (rpl->parsed()) {
            cmd_real_basis(n, o, r);
        } else if (lem->parsed()) {
            cmd_block_counts(degrees, r);
        } else if (ver->parsed()) {
            if (ns.empty())
                ns = {9, 12, 15, 20, 21, 35, 45};
            cmd_verify(ns, o, r);
        }
        finish_checks(r);
        res.code = r.passed() ? kPass : kCheckFailed;
        if (o.json)
            out << r.doc.dump(2) << '\n';
        else
            out << r.human.str();
    } catch (const ConductorError& e) {
        err << "input error: " << e.what() << '\n';
        if (n > 2 && n % 4 == 2)
            err << "Q(zeta_" << n << ") = Q(zeta_" << n / 2 << "); use n = " << n / 2 << " (n = 2 mod 4 is never a conductor)\n";
        res.code = kInputError;
    } catch (const NonUnitError& e) {
        err << "non-unit: " << e.what() << '\n';
        res.code = kInputError;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        res.code = kInputError;
    } catch (const PrecisionError& e) {
        err << "precision failure: " << e.what() << '\n';
        res.code = kPrecisionFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        res.code = kCheckFailed;
    }
    res.out = out.str();
    res.err = err.str();
    return res;
}

} // namespace cyclo::cli
