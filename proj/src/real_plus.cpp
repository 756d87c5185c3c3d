#include "cyclo/real_plus.hpp"

#include "cyclo/errors.hpp"

namespace cyclo {

std::string to_string(RealKind k)
{
    switch (k) {
    case RealKind::type0:
        return "type0";
    case RealKind::type1:
        return "type1";
    case RealKind::type2:
        return "type2";
    }
    return "?";
}

UnitSymbol literal_multiplier(const FieldRef& field)
{
    if (field->is_prime_power())
        throw InputError("the multiplier needs a composite conductor");
    std::vector<std::int32_t> t(static_cast<std::size_t>(field->rank()), 0);
    t[0] = 1;
    return UnitSymbol::atom(field, field->full_level(), t);
}

RealKind prescribed_kind(const FieldSpec& f, const GKIndex& x)
{
    if (x.is_xi())
        return RealKind::type0;
    if (!f.is_even())
        return RealKind::type2;
    for (int j : level_members(x.omega))
        if (f.factor(j).p == 2)
            return RealKind::type2;
    return RealKind::type1;
}

ExponentVector project_to_gk(const GoldKim& gk, const RealGenerator& g)
{
    ExponentVector out;
    for (const auto& part : g.parts)
        for (const auto& [idx, e] : gk.decompose(part)) {
            out[idx] += e;
            if (out[idx] == 0)
                out.erase(idx);
        }
    return out;
}

RealBasis real_basis(const GoldKim& gk, int bits)
{
    const auto& field = gk.field();
    RealBasis rb;
    rb.field = field;

    std::vector<int> orders;
    for (const auto& x : gk.basis())
        orders.push_back(hasse_order(basis_symbol(field, x), bits));

    if (!field->is_prime_power()) {
        GKIndex literal{field->full_level(), std::vector<std::int32_t>(static_cast<std::size_t>(field->rank()), 0)};
        literal.tuple[0] = 1;
        if (is_gk_index(*field, literal)) {
            rb.multiplier = literal;
            rb.multiplier_is_literal = true;
        } else {
            for (std::size_t i = 0; i < gk.basis().size(); ++i)
                if (orders[i] == 2) {
                    rb.multiplier = gk.basis()[i];
                    break;
                }
        }
        if (rb.multiplier && orders[gk.position(*rb.multiplier)] != 2)
            throw InternalError("real-plus multiplier does not have order 2");
    }

    for (std::size_t i = 0; i < gk.basis().size(); ++i) {
        const auto& x = gk.basis()[i];
        RealGenerator g;
        g.source = x;
        if (orders[i] == 2) {
            if (!rb.multiplier)
                throw InternalError("order-2 element without a multiplier");
            g.kind = RealKind::type2;
            g.parts = {basis_symbol(field, *rb.multiplier), basis_symbol(field, x)};
        } else {
            g.kind = x.is_xi() ? RealKind::type0 : RealKind::type1;
            g.parts = {basis_symbol(field, x)};
        }
        g.gk_image = project_to_gk(gk, g);
        rb.generators.push_back(std::move(g));
    }
    return rb;
}

EmbeddingVector real_embedding(const RealGenerator& g, int bits)
{
    EmbeddingVector out;
    for (const auto& part : g.parts)
        out = out + numeric_embed(part, bits);
    return out;
}

} // namespace cyclo
