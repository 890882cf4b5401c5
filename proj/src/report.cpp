#include "capit/report.hpp"

#include <sstream>

namespace capit {

Json type_json(const AbelianType& t)
{
    Json a = Json::array();
    for (uint64_t d : t.descending())
        a.push_back(d);
    return a;
}

Json class_set_json(ClassSet s)
{
    Json members = Json::array();
    for (ClassVector v : class_set_members(s))
        members.push_back(class_vector_str(v));
    return {{"generators", class_set_str(s)}, {"members", members}, {"order", class_set_size(s)}};
}

Json int_json(const Int& v)
{
    if (v.fits_slong_p())
        return Json(int64_t(v.get_si()));
    return Json(to_string(v));
}

Json record_json(const InvariantRecord& r)
{
    Json j = {
        {"p1", r.pair.p1},
        {"p2", r.pair.p2},
        {"d", int_json(r.d)},
        {"legendre", r.legendre.value()},
        {"pi", r.pi.value()},
        {"B", r.B.value()},
        {"m", r.m},
        {"n", r.n},
        {"q", r.q},
        {"norm_eps_r", r.norm_eps_r.value()},
        {"norm_eps_d", r.norm_eps_d.value()},
        {"psi", to_string(r.psi)},
        {"pi1", r.s1.pi.str()},
        {"pi3", r.s2.pi.str()},
    };
    if (r.quartic_product)
        j["quartic_product"] = r.quartic_product->value();
    if (r.quartic_triple)
        j["quartic_triple"] = r.quartic_triple->value();
    return j;
}

Json report_json(const PredictionReport& rep, const Validation& v)
{
    Json k = Json::array(), l = Json::array();
    const auto& layout = field_layout();
    for (int j = 0; j < 7; ++j) {
        const FieldLabel& f = layout[j];
        k.push_back({{"name", f.name()},
                     {"radicand", f.radicand},
                     {"alt_radicand", f.alt_radicand},
                     {"normal_over_Q", f.normal_over_q},
                     {"norm_group", class_set_json(rep.k[j].norm_group)},
                     {"kernel", class_set_json(rep.k[j].kernel)},
                     {"type", type_json(rep.k[j].type)},
                     {"taussky_A", rep.k[j].taussky_a}});
    }
    for (int j = 0; j < 7; ++j) {
        const FieldLabel& f = layout[7 + j];
        Json factors = Json::array();
        for (int x : f.factors)
            factors.push_back("K" + std::to_string(x));
        l.push_back({{"name", f.name()},
                     {"factors", factors},
                     {"normal_over_Q", f.normal_over_q},
                     {"norm_group", class_set_json(rep.l[j].norm_group)},
                     {"kernel", class_set_json(rep.l[j].kernel)},
                     {"type", type_json(rep.l[j].type)}});
    }
    Json failures = Json::array();
    for (const Check& c : v.failures())
        failures.push_back({{"check", c.name}, {"expected", c.expected}, {"engine", c.actual}});
    return {
        {"format", "capit_report_v1"},
        {"invariants", record_json(rep.record)},
        {"group",
         {{"m", rep.presentation.m},
          {"n", rep.presentation.n},
          {"q", rep.presentation.q},
          {"psi", to_string(rep.presentation.psi)},
          {"order", rep.group_order},
          {"derived_type", type_json(rep.derived_type)},
          {"coclass", rep.coclass},
          {"nilpotency_class", rep.nilpotency_class}}},
        {"disc", int_json(rep.disc)},
        {"Cl2_base", type_json(rep.base_class_group)},
        {"Cl2_K3", type_json(rep.cl2_k3)},
        {"Cl2_genus", type_json(rep.cl2_genus)},
        {"Cl2_hilbert_field", type_json(rep.derived_type)},
        {"K", k},
        {"L", l},
        {"validation",
         {{"ok", v.ok()},
          {"checks", v.checks.size()},
          {"validated_extensions", v.validated_extensions},
          {"failures", failures}}},
    };
}

Json pair_report_json(const PairReport& r)
{
    Json props = Json::object();
    for (const auto& x : r.results) {
        Json e = {{"ok", x.ok}};
        if (!x.detail.empty())
            e["detail"] = x.detail;
        props[x.name] = e;
    }
    return {{"p1", r.pair.p1}, {"p2", r.pair.p2}, {"ok", r.ok()}, {"properties", props}};
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

std::string report_text(const PredictionReport& rep, const Validation& v)
{
    const InvariantRecord& r = rep.record;
    std::ostringstream os;
    os << "pair (" << r.pair.p1 << ", " << r.pair.p2 << "), d = " << to_string(r.d) << "\n";
    os << "  (p1/p2) = " << to_string(r.legendre) << ", (pi1/pi3) = " << to_string(r.pi) << ", B = " << to_string(r.B)
       << "   pi1 = " << r.s1.pi.str() << ", pi3 = " << r.s2.pi.str() << "\n";
    os << "  m = " << r.m << ", n = " << r.n << ", q = " << r.q << ", N(eps_p1p2) = " << to_string(r.norm_eps_r)
       << ", psi = " << to_string(r.psi) << "\n";
    os << "  disc = " << to_string(rep.disc) << "\n";
    os << "G: order " << rep.group_order << ", G' " << rep.derived_type.str() << ", class " << rep.nilpotency_class
       << ", coclass " << rep.coclass << "\n";
    os << "  Cl2(K3) " << rep.cl2_k3.str() << ", Cl2(genus field) " << rep.cl2_genus.str() << "\n";
    const auto& layout = field_layout();
    for (int j = 0; j < 7; ++j) {
        const auto& f = layout[j];
        os << "  " << f.name() << " = k(sqrt(" << f.radicand << "))  type " << rep.k[j].type.str() << "  N "
           << class_set_str(rep.k[j].norm_group) << "  kernel " << class_set_str(rep.k[j].kernel)
           << (rep.k[j].taussky_a ? "  (A)" : "  not (A)") << "\n";
    }
    for (int j = 0; j < 7; ++j) {
        const auto& f = layout[7 + j];
        os << "  " << f.name() << " = K" << f.factors[0] << ".K" << f.factors[1] << ".K" << f.factors[2] << "  type "
           << rep.l[j].type.str() << "  kernel " << class_set_str(rep.l[j].kernel) << "\n";
    }
    os << "cross-validation: " << v.validated_extensions << "/14 extensions validated, " << v.checks.size()
       << " checks, " << (v.ok() ? "ok" : "FAILED") << "\n";
    for (const Check& c : v.failures())
        os << "  mismatch " << c.name << ": predicted " << c.expected << ", engine " << c.actual << "\n";
    return os.str();
}

} // namespace capit
