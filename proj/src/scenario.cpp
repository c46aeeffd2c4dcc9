#include "stab/scenario.hpp"
#include "stab/error.hpp"

#include <fstream>

namespace stab::scenario {

namespace {

std::string need_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw input_error(std::string("scenario: missing string field '") + key + "'");
    return j[key].get<std::string>();
}

long long need_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw input_error(std::string("scenario: missing integer field '") + key + "'");
    return j[key].get<long long>();
}

} // namespace

Scalar scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
    throw input_error("scenario: numbers must be exact scalar strings, got " + j.dump());
}

json scalar_to_json(const Scalar& s) { return json(s.str()); }

std::vector<Scalar> scalar_list(const json& j) {
    if (!j.is_array()) throw input_error("scenario: expected an array of scalars, got " + j.dump());
    std::vector<Scalar> out;
    for (const auto& x : j) out.push_back(scalar_from_json(x));
    return out;
}

json scalar_list_to_json(const std::vector<Scalar>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

sheaf::StabilityParameter sigma_from_json(const json& j) {
    sheaf::StabilityParameter s{scalar_list(j)};
    s.validate();
    return s;
}

cone::DivisorClass divisor_from_json(const json& j, int rho) {
    cone::DivisorClass d{scalar_list(j)};
    if (d.coords.size() != static_cast<size_t>(rho))
        throw input_error("scenario: divisor class has wrong rank");
    return d;
}

cone::CurveClass curve_from_json(const json& j, int rho) {
    cone::CurveClass c{scalar_list(j)};
    if (c.pair.size() != static_cast<size_t>(rho))
        throw input_error("scenario: curve class has wrong rank");
    return c;
}

namespace {

std::map<std::vector<int>, Scalar> pairing_table(const json& j) {
    std::map<std::vector<int>, Scalar> out;
    for (const auto& e : j) {
        std::vector<int> idx;
        for (const auto& i : e.at("idx")) idx.push_back(i.get<int>() - 1); // wire format is 1-based
        std::sort(idx.begin(), idx.end());
        out[idx] = scalar_from_json(e.at("val"));
    }
    return out;
}

json pairing_table_to_json(const std::map<std::vector<int>, Scalar>& t) {
    json out = json::array();
    for (const auto& [idx, val] : t) {
        json e;
        json ids = json::array();
        for (int i : idx) ids.push_back(i + 1);
        e["idx"] = ids;
        e["val"] = val.str();
        out.push_back(e);
    }
    return out;
}

sheaf::SheafClass sheaf_from_json(const json& j) {
    sheaf::SheafClass e;
    e.label = need_string(j, "label");
    e.dim = static_cast<int>(need_int(j, "dim"));
    e.rank = scalar_from_json(j.at("rank"));
    for (const auto& row : j.at("alpha")) e.alpha.push_back(scalar_list(row));
    if (j.contains("chern")) {
        sheaf::ChernRecord rec;
        rec.c1 = scalar_list(j["chern"].at("c1"));
        if (j["chern"].contains("c2pair")) rec.c2pair = pairing_table(j["chern"]["c2pair"]);
        if (j["chern"].contains("ch3")) rec.ch3 = scalar_from_json(j["chern"]["ch3"]);
        e.chern = std::move(rec);
    }
    e.validate();
    return e;
}

quiver::AnyRep rep_from_json(const json& j) {
    quiver::QuiverSpec spec;
    spec.j0 = static_cast<int>(need_int(j, "j0"));
    for (const auto& row : j.at("h")) {
        std::vector<int> r;
        for (const auto& x : row) r.push_back(x.get<int>());
        spec.h.push_back(std::move(r));
    }
    quiver::DimVector dims;
    for (const auto& x : j.at("dims")) dims.push_back(x.get<int>());
    const json& field = j.at("field");
    const json& maps = j.at("maps");

    auto build = [&](auto exemplar, auto parse_elem) -> quiver::AnyRep {
        using K = decltype(exemplar);
        quiver::Rep<K> rep;
        rep.spec = spec;
        rep.dims = dims;
        rep.ex = exemplar;
        rep.maps.assign(static_cast<size_t>(spec.j0),
                        std::vector<std::vector<Mat<K>>>(static_cast<size_t>(spec.j0)));
        for (int i = 0; i < spec.j0; ++i)
            for (int jj = 0; jj < spec.j0; ++jj) {
                const json& arrows = maps.at(static_cast<size_t>(i)).at(static_cast<size_t>(jj));
                for (const auto& rows : arrows) {
                    Mat<K> m(static_cast<size_t>(quiver::wdim(dims, jj)),
                             static_cast<size_t>(quiver::vdim(dims, i)), exemplar);
                    for (size_t r = 0; r < m.rows(); ++r)
                        for (size_t c = 0; c < m.cols(); ++c)
                            m.at(r, c) = parse_elem(rows.at(r).at(c));
                    rep.maps[static_cast<size_t>(i)][static_cast<size_t>(jj)].push_back(std::move(m));
                }
            }
        rep.validate();
        return quiver::AnyRep{need_string(j, "label"), std::move(rep)};
    };

    if (field.is_string() && !field.get<std::string>().empty() && field.get<std::string>()[0] == 'F') {
        unsigned q = static_cast<unsigned>(std::stoul(field.get<std::string>().substr(1)));
        const GF& F = GF::get(q);
        return build(Fq{0, &F}, [&F](const json& x) {
            long long v = x.is_string() ? std::stoll(x.get<std::string>()) : x.get<long long>();
            if (v < 0 || v >= static_cast<long long>(F.q()))
                throw input_error("representation: field element out of range");
            return Fq{static_cast<uint8_t>(v), &F};
        });
    }
    if ((field.is_string() && field.get<std::string>() == "Q") || field.is_object()) {
        // rationals or a quadratic extension; elements parse as scalar strings
        // and must stay inside the declared field
        long long d = field.is_object() ? field.at("quad").get<long long>() : 0;
        return build(Scalar(0), [d](const json& x) {
            Scalar v = scalar_from_json(x);
            if (d == 0 && !v.is_rational())
                throw input_error("representation over Q has an irrational entry " + v.str());
            Scalar::join_fields(d, v.quad_d()); // throws on a foreign extension
            return v;
        });
    }
    throw input_error("representation: unknown field descriptor " + field.dump());
}

} // namespace

Scenario parse_scenario(const json& j) {
    Scenario sc;
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw input_error("scenario: unsupported or missing schema (expected 1)");
    if (j.contains("sheaf_classes"))
        for (const auto& e : j["sheaf_classes"]) sc.sheaf_classes.push_back(sheaf_from_json(e));
    if (j.contains("families"))
        for (const auto& f : j["families"]) {
            Scenario::Family fam;
            fam.label = need_string(f, "label");
            fam.target = need_string(f, "target");
            for (const auto& c : f.at("candidates")) fam.candidates.push_back(c.get<std::string>());
            if (f.contains("relations"))
                for (const auto& r : f["relations"])
                    fam.relations.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
            sc.families.push_back(std::move(fam));
        }
    if (j.contains("representations"))
        for (const auto& r : j["representations"]) sc.representations.push_back(rep_from_json(r));
    if (j.contains("tensors"))
        for (const auto& t : j["tensors"]) {
            Scenario::Tensor tensor;
            tensor.label = need_string(t, "label");
            tensor.tensor.n = static_cast<int>(need_int(t, "n"));
            tensor.tensor.rho = static_cast<int>(need_int(t, "rho"));
            tensor.tensor.entries = pairing_table(t.at("entries"));
            tensor.tensor.validate();
            if (t.contains("amples"))
                for (const auto& a : t["amples"])
                    tensor.amples.push_back(divisor_from_json(a, tensor.tensor.rho));
            sc.tensors.push_back(std::move(tensor));
        }
    if (j.contains("params")) sc.params = j["params"];
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario(j);
}

const sheaf::SheafClass& Scenario::sheaf(const std::string& label) const {
    for (const auto& e : sheaf_classes)
        if (e.label == label) return e;
    throw input_error("scenario: unknown sheaf class '" + label + "'");
}

sheaf::FamilySpec Scenario::family(const std::string& label) const {
    for (const auto& f : families)
        if (f.label == label) {
            sheaf::FamilySpec spec;
            for (const auto& c : f.candidates) spec.candidates.push_back(sheaf(c));
            spec.relations = f.relations;
            return spec;
        }
    throw input_error("scenario: unknown family '" + label + "'");
}

const quiver::AnyRep& Scenario::representation(const std::string& label) const {
    for (const auto& r : representations)
        if (r.label == label) return r;
    throw input_error("scenario: unknown representation '" + label + "'");
}

const cone::IntersectionTensor& Scenario::tensor(const std::string& label) const {
    for (const auto& t : tensors)
        if (t.label == label) return t.tensor;
    return cone::bundled_tensor(label).tensor;
}

std::vector<cone::DivisorClass> Scenario::tensor_amples(const std::string& label) const {
    for (const auto& t : tensors)
        if (t.label == label) return t.amples;
    return cone::bundled_tensor(label).amples;
}

kahler::ChernTodd cherntodd_from_json(const json& j, int rho) {
    kahler::ChernTodd ch;
    ch.rank = scalar_from_json(j.at("rank"));
    ch.c1 = divisor_from_json(j.at("c1"), rho);
    if (j.contains("c2pair")) ch.c2pair = pairing_table(j["c2pair"]);
    if (j.contains("ch3")) ch.ch3 = scalar_from_json(j["ch3"]);
    if (j.contains("todd1"))
        ch.todd1 = divisor_from_json(j["todd1"], rho);
    else
        ch.todd1.coords.assign(static_cast<size_t>(rho), Scalar(0));
    if (j.contains("todd2pair")) ch.todd2pair = pairing_table(j["todd2pair"]);
    if (j.contains("todd3")) ch.todd3 = scalar_from_json(j["todd3"]);
    return ch;
}

// ---- command executors ----

namespace {

json walls_to_json(const std::vector<chamber::Wall>& walls) {
    json out = json::array();
    for (const auto& w : walls) {
        json e;
        json normal = json::array();
        for (const auto& v : w.normal) normal.push_back(v.to_string());
        e["normal"] = normal;
        e["coeff_index"] = w.coeff_index;
        e["f_label"] = w.f_label;
        e["e_label"] = w.e_label;
        out.push_back(e);
    }
    return out;
}

chamber::Region region_from(const json& params) {
    std::string r = params.value("region", "full");
    if (r == "full") return chamber::Region::FullOrthant;
    if (r == "positive") return chamber::Region::PositiveOrthant;
    throw input_error("unknown region '" + r + "' (use full|positive)");
}

std::pair<const sheaf::SheafClass*, sheaf::FamilySpec> target_and_family(const Scenario& sc,
                                                                         const json& params) {
    std::string flabel = params.value("family", sc.families.empty() ? "" : sc.families[0].label);
    if (flabel.empty()) throw input_error("no family specified and scenario declares none");
    for (const auto& f : sc.families)
        if (f.label == flabel) {
            std::string tlabel = params.value("target", f.target);
            return {&sc.sheaf(tlabel), sc.family(flabel)};
        }
    throw input_error("scenario: unknown family '" + flabel + "'");
}

json subdims_to_json(const quiver::DimVector& d) {
    json out = json::array();
    for (int x : d) out.push_back(x);
    return out;
}

template <class K>
json submodule_to_json(const quiver::Submodule<K>& s) {
    json out;
    out["dims"] = subdims_to_json(s.dims());
    json vb = json::array(), wb = json::array();
    auto mat_to_json = [](const Mat<K>& m) {
        json rows = json::array();
        for (size_t r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
            rows.push_back(row);
        }
        return rows;
    };
    for (const auto& m : s.V) vb.push_back(mat_to_json(m));
    for (const auto& m : s.W) wb.push_back(mat_to_json(m));
    out["vbases"] = vb;
    out["wbases"] = wb;
    return out;
}

const char* check_kind_name(quiver::CheckKind k) {
    switch (k) {
        case quiver::CheckKind::Stable: return "Stable";
        case quiver::CheckKind::Semistable: return "Semistable";
        case quiver::CheckKind::Unstable: return "Unstable";
        default: return "NoDestabilizerFound";
    }
}

quiver::Strategy strategy_from(const json& params, uint64_t seed, const Caps& caps) {
    std::string s = params.value("strategy", "exhaustive");
    if (s == "exhaustive") return quiver::ExhaustiveFiniteField{caps.subspace};
    if (s == "seeded")
        return quiver::SeededSearch{seed, params.value("trials", 200)};
    throw input_error("unknown strategy '" + s + "' (use exhaustive|seeded)");
}

} // namespace

json run_walls(const Scenario& sc, const json& params) {
    auto [target, family] = target_and_family(sc, params);
    auto walls = chamber::compute_walls(*target, family, region_from(params));
    json out;
    out["command"] = "walls";
    out["target"] = target->label;
    out["walls"] = walls_to_json(walls);
    out["count"] = walls.size();
    return out;
}

json run_chambers(const Scenario& sc, const json& params, ExecMode mode) {
    auto [target, family] = target_and_family(sc, params);
    chamber::Region region = region_from(params);
    auto walls = chamber::compute_walls(*target, family, region);
    auto chambers = chamber::enumerate_chambers(walls, target->bundles(), region, mode);
    json out;
    out["command"] = "chambers";
    out["target"] = target->label;
    out["walls"] = walls_to_json(walls);
    json cj = json::array();
    for (const auto& c : chambers) {
        json e;
        e["signs"] = c.signs;
        e["sample"] = scalar_list_to_json(c.sample);
        e["full_dim"] = c.full_dim;
        // verification transcript: the sample re-locates to the sign vector
        sheaf::StabilityParameter sp{c.sample};
        e["verified"] = chamber::locate(sp, walls) == c.signs;
        cj.push_back(e);
    }
    out["chambers"] = cj;
    out["count"] = chambers.size();
    return out;
}

json run_locate(const Scenario& sc, const json& params) {
    auto [target, family] = target_and_family(sc, params);
    chamber::Region region = region_from(params);
    auto walls = chamber::compute_walls(*target, family, region);
    sheaf::StabilityParameter sigma = sigma_from_json(params.at("sigma"));
    json out;
    out["command"] = "locate";
    out["sigma"] = scalar_list_to_json(sigma.sigma);
    out["signs"] = chamber::locate(sigma, walls);
    if (params.value("rational_representative", false)) {
        auto rep = chamber::rational_representative(chamber::locate(sigma, walls), walls,
                                                    target->bundles(), region);
        out["rational_representative"] = scalar_list_to_json(rep.sigma);
        out["representative_verified"] = chamber::locate(rep, walls) == out["signs"];
    }
    return out;
}

json run_stability(const Scenario& sc, const json& params) {
    auto [target, family] = target_and_family(sc, params);
    sheaf::StabilityParameter sigma = sigma_from_json(params.at("sigma"));
    sheaf::Verdict v = sheaf::verdict(*target, family, sigma);
    json out;
    out["command"] = "stability";
    out["target"] = target->label;
    out["sigma"] = scalar_list_to_json(sigma.sigma);
    out["verdict"] = v.kind == sheaf::VerdictKind::Stable
                         ? "Stable"
                         : (v.kind == sheaf::VerdictKind::Unstable ? "Unstable"
                                                                   : "StrictlySemistable");
    out["vacuous"] = v.vacuous;
    json w = json::array();
    for (const auto& x : v.witnesses) w.push_back(x);
    out["witnesses"] = w;
    return out;
}

json run_quiver(const Scenario& sc, const std::string& sub, const json& params, uint64_t seed,
                const Caps& caps) {
    const quiver::AnyRep& rep = sc.representation(params.at("rep").get<std::string>());
    sheaf::StabilityParameter sigma = sigma_from_json(params.at("sigma"));
    json out;
    out["command"] = "quiver " + sub;
    out["rep"] = rep.label;
    out["sigma"] = scalar_list_to_json(sigma.sigma);
    if (sub == "check") {
        quiver::Strategy strat = strategy_from(params, seed, caps);
        if (std::holds_alternative<quiver::Rep<Fq>>(rep.rep)) {
            auto r = quiver::semistability_check(std::get<quiver::Rep<Fq>>(rep.rep), sigma, strat);
            out["verdict"] = check_kind_name(r.kind);
            out["exhaustive"] = r.exhaustive;
            out["trials"] = r.trials;
            if (r.witness) out["witness"] = submodule_to_json(*r.witness);
            json dj = json::array();
            for (const auto& d : r.destabilizers) dj.push_back(submodule_to_json(d));
            out["destabilizers"] = dj;
        } else {
            if (!std::holds_alternative<quiver::SeededSearch>(strat))
                throw input_error("exact-field representations require the seeded strategy");
            auto r = quiver::semistability_check(std::get<quiver::Rep<Scalar>>(rep.rep), sigma,
                                                 std::get<quiver::SeededSearch>(strat));
            out["verdict"] = check_kind_name(r.kind);
            out["exhaustive"] = false;
            out["trials"] = r.trials;
            if (r.witness) out["witness"] = submodule_to_json(*r.witness);
        }
        return out;
    }
    if (!std::holds_alternative<quiver::Rep<Fq>>(rep.rep))
        throw input_error("quiver " + sub + " requires a finite-field representation");
    const auto& frep = std::get<quiver::Rep<Fq>>(rep.rep);
    if (sub == "hn") {
        auto hn = quiver::hn_filtration(frep, sigma, caps.subspace);
        json steps = json::array(), slopes = json::array();
        for (const auto& s : hn.steps) steps.push_back(submodule_to_json(s));
        for (const auto& s : hn.slopes) slopes.push_back(s.str());
        out["steps"] = steps;
        out["factor_slopes"] = slopes;
        return out;
    }
    if (sub == "jh") {
        auto jh = quiver::jh_filtration(frep, sigma, caps.subspace);
        json steps = json::array(), factors = json::array();
        for (const auto& s : jh.steps) steps.push_back(submodule_to_json(s));
        for (const auto& f : jh.factors) factors.push_back(subdims_to_json(f.dims));
        out["steps"] = steps;
        out["factor_dims"] = factors;
        return out;
    }
    if (sub == "sequiv") {
        const quiver::AnyRep& rep2 = sc.representation(params.at("rep2").get<std::string>());
        if (!std::holds_alternative<quiver::Rep<Fq>>(rep2.rep))
            throw input_error("quiver sequiv requires finite-field representations");
        auto se = quiver::s_equivalent(frep, std::get<quiver::Rep<Fq>>(rep2.rep), sigma,
                                       caps.subspace);
        out["rep2"] = rep2.label;
        out["equivalent"] = se.equivalent;
        out["certain"] = se.certain;
        return out;
    }
    throw input_error("unknown quiver subcommand '" + sub + "'");
}

json run_cone(const Scenario& sc, const std::string& sub, const json& params, ExecMode mode) {
    const std::string tname = params.at("tensor").get<std::string>();
    const cone::IntersectionTensor& tensor = sc.tensor(tname);
    json out;
    out["command"] = "cone " + sub;
    out["tensor"] = tname;
    if (sub == "hodge") {
        std::vector<cone::DivisorClass> amples = sc.tensor_amples(tname);
        if (params.contains("amples")) {
            amples.clear();
            for (const auto& a : params["amples"]) amples.push_back(divisor_from_json(a, tensor.rho));
        }
        json rows = json::array();
        bool all_ok = true;
        for (const auto& l : amples) {
            cone::SignatureResult sig = cone::signature(cone::q_form_matrix(tensor, l));
            json e;
            e["ample"] = scalar_list_to_json(l.coords);
            e["signature"] = {sig.pos, sig.neg, sig.zero};
            bool ok = sig.pos == 1 && sig.neg == tensor.rho - 1 && sig.zero == 0;
            e["hodge_ok"] = ok;
            all_ok = all_ok && ok;
            rows.push_back(e);
        }
        out["results"] = rows;
        out["all_hodge_ok"] = all_ok;
        return out;
    }
    if (sub == "kplus") {
        cone::DivisorClass l = divisor_from_json(params.at("L"), tensor.rho);
        cone::DivisorClass beta = divisor_from_json(params.at("beta"), tensor.rho);
        out["contained"] = cone::kplus_contains(tensor, l, beta);
        return out;
    }
    if (sub == "bogomolov") {
        cone::DivisorClass l = divisor_from_json(params.at("L"), tensor.rho);
        cone::ChernData f;
        f.rank = scalar_from_json(params.at("chern").at("rank"));
        f.c1 = divisor_from_json(params.at("chern").at("c1"), tensor.rho);
        if (params.at("chern").contains("c2pair"))
            f.c2pair = pairing_table(params.at("chern").at("c2pair"));
        Scalar beta_const = params.contains("beta_const")
                                ? scalar_from_json(params.at("beta_const"))
                                : Scalar(0);
        out["discriminant_pair"] = cone::discriminant_pair(f, tensor, l).str();
        out["unstable_certified"] = cone::bogomolov_unstable(f, tensor, l, beta_const);
        return out;
    }
    if (sub == "identity") {
        auto parse_chern = [&](const json& cj) {
            cone::ChernData f;
            f.rank = scalar_from_json(cj.at("rank"));
            f.c1 = divisor_from_json(cj.at("c1"), tensor.rho);
            if (cj.contains("c2pair")) f.c2pair = pairing_table(cj.at("c2pair"));
            return f;
        };
        cone::ChernData a = parse_chern(params.at("A"));
        cone::ChernData b = parse_chern(params.at("B"));
        cone::DivisorClass l = divisor_from_json(params.at("L"), tensor.rho);
        cone::IdentityReport rep = cone::extension_discriminant_identity(a, b, tensor, l);
        out["lhs"] = rep.lhs.str();
        out["rhs"] = rep.rhs.str();
        out["equal"] = rep.equal;
        return out;
    }
    if (sub == "path") {
        cone::DivisorClass l1 = divisor_from_json(params.at("L1"), tensor.rho);
        cone::DivisorClass l2 = divisor_from_json(params.at("L2"), tensor.rho);
        cone::CurveClass g0 = curve_from_json(params.at("gamma0"), tensor.rho);
        cone::CurveClass ginf = curve_from_json(params.at("gamma_inf"), tensor.rho);
        int tsamples = params.value("t_samples", 101);
        int sres = params.value("s_resolution", 12);
        cone::PathResult res =
            cone::cplus_path_certificate(tensor, g0, ginf, l1, l2, tsamples, sres, mode);
        json rows = json::array();
        for (const auto& c : res.certificates) {
            json e;
            e["u"] = c.u.to_string();
            e["ok"] = c.ok;
            if (c.ok) {
                e["s"] = c.s.to_string();
                e["beta"] = scalar_list_to_json(c.beta.coords);
            }
            rows.push_back(e);
        }
        out["certificates"] = rows;
        out["all_ok"] = res.all_ok;
        return out;
    }
    throw input_error("unknown cone subcommand '" + sub + "'");
}

json run_approx_split(const Scalar& tau, const Scalar& theta,
                      const std::optional<Rational>& lambda) {
    kahler::SplitResult r =
        lambda ? kahler::split_pair_with(tau, theta, *lambda) : kahler::split_pair(tau, theta);
    json out;
    out["command"] = "approx split";
    out["tau"] = tau.str();
    out["theta"] = theta.str();
    out["lambda"] = r.lambda.str();
    out["sigma"] = r.weight_s.str();
    out["sigma_prime"] = r.weight_sprime.str();
    bool ok = r.weight_s + r.weight_sprime * r.lambda == tau &&
              r.weight_s + r.weight_sprime * r.lambda * r.lambda == theta;
    out["verification"] = ok ? "ok" : "failed";
    return out;
}

json run_approx_omega(const Scenario& sc, const json& params) {
    const std::string tname = params.at("tensor").get<std::string>();
    const cone::IntersectionTensor& tensor = sc.tensor(tname);
    cone::DivisorClass omega = divisor_from_json(params.at("omega"), tensor.rho);
    std::vector<cone::DivisorClass> candidates;
    for (const auto& c : params.at("candidates"))
        candidates.push_back(divisor_from_json(c, tensor.rho));
    bool proportional = params.value("proportional", false);
    kahler::OmegaDecomposition d =
        kahler::decompose_omega(tensor, omega, candidates, proportional);
    json out;
    out["command"] = "approx omega";
    out["tensor"] = tname;
    out["omega"] = scalar_list_to_json(omega.coords);
    json classes = json::array();
    for (size_t j = 0; j < d.classes.size(); ++j) {
        json e;
        e["class"] = scalar_list_to_json(d.classes[j].coords);
        e["weight"] = d.weights[j].str();
        classes.push_back(e);
    }
    out["decomposition"] = classes;
    out["j0"] = d.classes.size();
    out["rank_certificate"] = d.rank_certificate;
    out["rank_maximal"] = d.rank_maximal;
    out["alpha1"] = d.alpha1.str();
    out["alpha2"] = d.alpha2.str();
    out["verification"] = kahler::verify_decomposition(tensor, omega, d) ? "ok" : "failed";
    return out;
}

json run_vgit_scan(const Scenario& sc, const json& params, uint64_t seed, const Caps& caps) {
    std::vector<quiver::AnyRep> samples;
    for (const auto& label : params.at("samples"))
        samples.push_back(sc.representation(label.get<std::string>()));
    if (params.contains("grid")) {
        quiver::Strategy strat = strategy_from(params, seed, caps);
        vgit::GridTrace g = vgit::sigma_scan_grid(samples, params["grid"].get<int>(), strat);
        json out;
        out["command"] = "vgit scan";
        out["grid"] = params["grid"];
        out["definitive"] = g.definitive;
        json cells = json::array();
        for (const auto& cell : g.cells) {
            json e;
            e["sigma"] = scalar_list_to_json(cell.sigma);
            json labels = json::array();
            for (const auto& l : cell.semistable) labels.push_back(l);
            e["semistable"] = labels;
            cells.push_back(e);
        }
        out["cells"] = cells;
        out["distinct_subsets"] = g.distinct_subsets.size();
        return out;
    }
    vgit::ScanPath path;
    path.start = sigma_from_json(params.at("start"));
    path.end = sigma_from_json(params.at("end"));
    path.steps = params.value("steps", 16);
    quiver::Strategy strat = strategy_from(params, seed, caps);
    vgit::ScanTrace trace = vgit::sigma_scan(samples, path, strat);
    json out;
    out["command"] = "vgit scan";
    out["steps"] = path.steps;
    out["definitive"] = trace.definitive;
    json events = json::array();
    for (const auto& ev : trace.events) {
        json e;
        e["u_start"] = ev.u_start.to_string();
        e["u_end"] = ev.u_end.to_string();
        json labels = json::array();
        for (const auto& l : ev.semistable) labels.push_back(l);
        e["semistable"] = labels;
        e["recheck_ok"] = ev.recheck_ok;
        events.push_back(e);
    }
    out["events"] = events;
    json flips = json::array();
    for (const auto& f : trace.flips) {
        json e;
        e["u_minus"] = f.u_minus.to_string();
        e["u_zero"] = f.u_zero.to_string();
        e["u_plus"] = f.u_plus.to_string();
        e["sigma_minus"] = scalar_list_to_json(f.sigma_minus);
        e["sigma_zero"] = scalar_list_to_json(f.sigma_zero);
        e["sigma_plus"] = scalar_list_to_json(f.sigma_plus);
        json g = json::array(), l = json::array();
        for (const auto& x : f.gained) g.push_back(x);
        for (const auto& x : f.lost) l.push_back(x);
        e["gained"] = g;
        e["lost"] = l;
        e["inclusion_holds"] = f.inclusion_holds;
        flips.push_back(e);
    }
    out["flips"] = flips;
    // wall audit when candidate subdimension vectors are declared
    if (params.contains("candidate_subdims")) {
        std::vector<quiver::DimVector> subs;
        for (const auto& s : params["candidate_subdims"]) {
            quiver::DimVector d;
            for (const auto& x : s) d.push_back(x.get<int>());
            subs.push_back(std::move(d));
        }
        auto walls = vgit::candidate_walls(samples[0].dims(), subs);
        out["candidate_walls"] = walls_to_json(walls);
    }
    return out;
}

namespace {
void flatten(const json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& v : j) flatten(v, prefix + "[" + std::to_string(i++) + "]", out);
    } else {
        out += prefix + "," +
               (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
    }
}
} // namespace

std::string to_csv(const json& j) {
    std::string out = "key,value\n";
    flatten(j, "", out);
    return out;
}

} // namespace stab::scenario
