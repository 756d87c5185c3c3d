#include "cyclo/format.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "cyclo/errors.hpp"

namespace cyclo {

namespace {

std::vector<std::int64_t> parse_csv(const std::string& text, const std::string& whole)
{
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const auto piece = text.substr(start, end - start);
        std::int64_t v = 0;
        const auto* first = piece.data();
        const auto* last = piece.data() + piece.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (piece.empty() || ec != std::errc() || ptr != last)
            throw InputError("malformed index: " + whole);
        out.push_back(v);
        start = end + 1;
    }
    return out;
}

GKIndex make_index(const std::vector<std::int64_t>& members, const std::vector<std::int64_t>& tuple,
                   const std::string& what)
{
    if (members.empty() || members.size() != tuple.size())
        throw InputError("index needs one tuple entry per level member: " + what);
    GKIndex g;
    std::int64_t prev = 0;
    for (auto m : members) {
        if (m <= prev || m > 32)
            throw InputError("level members must be increasing 1-based positions: " + what);
        prev = m;
        g.omega |= Level{1} << (m - 1);
    }
    for (auto t : tuple) {
        if (t < 0 || t > INT32_MAX)
            throw InputError("tuple entry out of range: " + what);
        g.tuple.push_back(static_cast<std::int32_t>(t));
    }
    return g;
}

} // namespace

GKIndex parse_index(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ')
            s += c;
    const bool xi = s.rfind("xi", 0) == 0;
    if (xi)
        s = s.substr(2);
    const auto semi = s.find(';');
    if (s.size() < 4 || s.front() != '(' || s.back() != ')' || semi == std::string::npos)
        throw InputError("malformed index: " + text);
    auto g = make_index(parse_csv(s.substr(1, semi - 1), text), parse_csv(s.substr(semi + 1, s.size() - semi - 2), text),
                        text);
    if (xi != g.is_xi())
        throw InputError("xi prefix belongs exactly to singleton levels: " + text);
    return g;
}

std::string format_exponents(const ExponentVector& v)
{
    std::vector<std::pair<GKIndex, std::int64_t>> terms(v.begin(), v.end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return tuple_order_less(a.first, b.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : terms) {
        if (e == 0)
            continue;
        os << (first ? "" : " * ") << format_index(g) << '^' << e;
        first = false;
    }
    return first ? "0" : os.str();
}

Json index_to_json(const GKIndex& g)
{
    Json level = Json::array();
    for (int m : level_members(g.omega))
        level.push_back(m + 1);
    return Json{{"label", format_index(g)}, {"level", level}, {"tuple", g.tuple}};
}

GKIndex index_from_json(const Json& j)
{
    try {
        auto g = make_index(j.at("level").get<std::vector<std::int64_t>>(),
                            j.at("tuple").get<std::vector<std::int64_t>>(), j.dump());
        if (j.contains("label") && j.at("label").get<std::string>() != format_index(g))
            throw InputError("label does not match level and tuple: " + j.dump());
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed index object: ") + e.what());
    }
}

Json exponents_to_json(const ExponentVector& v)
{
    std::vector<std::pair<GKIndex, std::int64_t>> terms(v.begin(), v.end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return tuple_order_less(a.first, b.first); });
    Json out = Json::array();
    for (const auto& [g, e] : terms)
        if (e != 0)
            out.push_back(Json{{"index", index_to_json(g)}, {"exponent", e}});
    return out;
}

ExponentVector exponents_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("exponent vector must be a JSON array");
    ExponentVector out;
    try {
        for (const auto& term : j) {
            auto g = index_from_json(term.at("index"));
            if (out.count(g))
                throw InputError("repeated index " + format_index(g));
            out[g] = term.at("exponent").get<std::int64_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed exponent vector: ") + e.what());
    }
    return out;
}

Json basis_to_json(const FieldSpec& f, const std::vector<GKIndex>& basis)
{
    Json primes = Json::array();
    for (const auto& pf : f.factors())
        primes.push_back(pf.q);
    Json list = Json::array();
    for (const auto& g : basis)
        list.push_back(index_to_json(g));
    return Json{{"n", f.n()},
                {"prime_powers", primes},
                {"count", basis.size()},
                {"expected", f.phi_n() / 2 - 1},
                {"basis", list}};
}

BasisListing basis_from_json(const Json& j)
{
    BasisListing out;
    try {
        out.n = j.at("n").get<std::int64_t>();
        for (const auto& g : j.at("basis"))
            out.basis.push_back(index_from_json(g));
        if (j.contains("count") && j.at("count").get<std::size_t>() != out.basis.size())
            throw InputError("basis listing count does not match its entries");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed basis listing: ") + e.what());
    }
    return out;
}

} // namespace cyclo
