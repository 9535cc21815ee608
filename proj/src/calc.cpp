#include "hecke/calc.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hecke/finitegrp.hpp"

namespace hecke {

using nlohmann::json;

namespace {

Rat rat_from(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    throw ValidationError(what + ": expected an integer or a rational string");
}

QVec qvec_from(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + ": expected an array");
    QVec v;
    for (const auto& x : j) v.push_back(rat_from(x, what));
    return v;
}

IVec ivec_from(const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + ": expected an array");
    IVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw ValidationError(what + ": expected integers");
        v.push_back(x.get<long long>());
    }
    return v;
}

json parse_json_file(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

BlockSpec parse_spec_json(const std::string& text, const std::string& origin) {
    json j = parse_json_file(text, origin);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw ValidationError(origin + ": unsupported or missing schema_version");

    BlockSpec spec;
    const auto& rd = j.at("root_datum");
    int rank = rd.at("rank").get<int>();
    std::vector<IVec> roots, coroots;
    for (const auto& r : rd.at("roots")) roots.push_back(ivec_from(r, "roots"));
    for (const auto& r : rd.at("coroots")) coroots.push_back(ivec_from(r, "coroots"));
    spec.datum = validate_root_datum(rank, roots, coroots);

    if (j.contains("frobenius")) {
        IMat m;
        for (const auto& row : j["frobenius"].at("matrix"))
            m.push_back(ivec_from(row, "frobenius.matrix"));
        spec.frob = validate_frobenius(spec.datum, m, j["frobenius"].at("order").get<int>());
    } else {
        spec.frob = FrobeniusAction::identity(rank);
    }

    spec.levels.assign(spec.datum.roots.size(), LevelSet{Rat(0), Rat(1)});
    if (j.contains("levels")) {
        const auto& lv = j["levels"];
        if (lv.size() != spec.datum.roots.size())
            throw ValidationError(origin + ": levels must align with the root list");
        for (size_t i = 0; i < lv.size(); ++i) {
            spec.levels[i].offset = rat_from(lv[i].at("offset"), "levels.offset");
            spec.levels[i].period = rat_from(lv[i].at("period"), "levels.period");
        }
    }

    if (j.contains("levi")) {
        for (const auto& x : j["levi"]) {
            int idx = x.get<int>();
            if (idx < 0 || idx >= static_cast<int>(spec.datum.roots.size()))
                throw ValidationError(origin + ": levi index out of range");
            spec.levi.push_back(idx);
        }
        std::sort(spec.levi.begin(), spec.levi.end());
        spec.levi.erase(std::unique(spec.levi.begin(), spec.levi.end()), spec.levi.end());
        // Root-closed: stable under negation and under addition within the set.
        std::set<IVec> levi_set;
        for (int i : spec.levi) levi_set.insert(spec.datum.roots[i]);
        for (int i : spec.levi) {
            IVec neg = spec.datum.roots[i];
            for (auto& x : neg) x = -x;
            if (!levi_set.count(neg))
                throw ValidationError(origin + ": levi subset not closed under negation");
        }
        for (int i : spec.levi)
            for (int k : spec.levi) {
                IVec sum = spec.datum.roots[i];
                for (size_t t = 0; t < sum.size(); ++t) sum[t] += spec.datum.roots[k][t];
                bool is_root = false;
                for (const auto& r : spec.datum.roots)
                    if (r == sum) is_root = true;
                if (is_root && !levi_set.count(sum))
                    throw ValidationError(origin + ": levi subset is not root-closed");
            }
    }

    QVec s = qvec_from(j.at("theta").at("s"), "theta.s");
    spec.theta = make_theta_datum(spec.datum, s, spec.frob);

    spec.x0.assign(rank, Rat(0));
    if (j.contains("point")) spec.x0 = qvec_from(j["point"].at("x0"), "point.x0");
    if (static_cast<int>(spec.x0.size()) != rank)
        throw ValidationError(origin + ": x0 of wrong dimension");

    if (j.contains("options")) {
        const auto& o = j["options"];
        if (o.contains("q")) {
            long long q = o["q"].get<long long>();
            if (q < 2) throw ValidationError(origin + ": residue cardinality must be >= 2");
            spec.options.q = q;
        }
        if (o.contains("check_oracle")) spec.options.check_oracle = o["check_oracle"].get<bool>();
        if (o.contains("cuspidal")) spec.options.cuspidal_label = o["cuspidal"].get<std::string>();
        if (o.contains("table")) spec.options.table_path = o["table"].get<std::string>();
    }

    if (j.contains("omega")) {
        const auto& om = j["omega"];
        OmegaData o;
        o.size = om.at("size").get<int>();
        for (const auto& row : om.at("table")) {
            std::vector<int> r;
            for (const auto& x : row) r.push_back(x.get<int>());
            o.table.push_back(r);
        }
        for (const auto& row : om.at("s_action")) {
            std::vector<int> r;
            for (const auto& x : row) r.push_back(x.get<int>());
            o.s_action.push_back(r);
        }
        if (om.contains("mu")) {
            for (const auto& row : om["mu"]) {
                std::vector<Rat> r;
                for (const auto& x : row) r.push_back(rat_from(x, "omega.mu"));
                o.mu.push_back(r);
            }
        } else {
            o.mu.assign(o.size, std::vector<Rat>(o.size, Rat(1)));
        }
        spec.omega = o;
        spec.omega_given = true;
    }
    return spec;
}

BlockSpec load_spec(const std::string& path) {
    return parse_spec_json(read_file(path), path);
}

const ParameterTableEntry* ParameterTable::find(const std::string& type,
                                                const std::string& levi,
                                                const std::string& cuspidal) const {
    for (const auto& e : entries)
        if (e.type == type && e.levi == levi && e.cuspidal == cuspidal) return &e;
    return nullptr;
}

ParameterTable parse_parameter_table_json(const std::string& text,
                                          const std::string& origin) {
    json j = parse_json_file(text, origin);
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != 1)
        throw ValidationError(origin + ": unsupported or missing schema_version");
    ParameterTable t;
    if (!j.contains("entries")) return t;
    for (const auto& e : j["entries"]) {
        ParameterTableEntry entry;
        entry.type = e.at("type").get<std::string>();
        entry.levi = e.at("levi").get<std::string>();
        entry.cuspidal = e.at("cuspidal").get<std::string>();
        entry.exponent = rat_from(e.at("exponent"), "exponent");
        if (!(entry.exponent > Rat(0)))
            throw ValidationError(origin + ": table exponent must be positive");
        if (e.contains("provenance")) entry.provenance = e["provenance"].get<std::string>();
        if (t.find(entry.type, entry.levi, entry.cuspidal))
            throw ValidationError(origin + ": duplicate table key " + entry.type + "/" +
                                  entry.levi + "/" + entry.cuspidal);
        t.entries.push_back(entry);
    }
    return t;
}

ParameterTable load_parameter_table(const std::string& path) {
    return parse_parameter_table_json(read_file(path), path);
}

namespace {

// Integer basis of { v : levi roots vanish on v and frob_co fixes v }.
std::vector<QVec> direction_lattice(const std::vector<QVec>& levi_roots,
                                    const QMat& frob_co, int rank) {
    QMat constraints;
    for (const auto& r : levi_roots) constraints.push_back(r);
    QMat fminus = frob_co;
    for (int i = 0; i < rank; ++i) fminus[i][i] -= Rat(1);
    for (const auto& row : fminus)
        if (!is_zero(row)) constraints.push_back(row);
    QMat basis = kernel_basis(constraints, rank);
    for (auto& row : basis) {
        Rat c;
        IVec prim = primitive_vector(row, c);
        row = to_qvec(prim);
    }
    return basis;
}

bool same_span(const std::vector<QVec>& a, const std::vector<QVec>& b) {
    QMat ma, mb;
    for (const auto& v : a) ma.push_back(v);
    for (const auto& v : b) mb.push_back(v);
    QMat both = ma;
    for (const auto& v : b) both.push_back(v);
    return rank(ma) == rank(mb) && rank(ma) == rank(both);
}

Rat rat_gcd(const Rat& a, const Rat& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    long long num = std::gcd(std::llabs(a.num * b.den), std::llabs(b.num * a.den));
    return Rat(num, a.den * b.den);
}

// A wall class: one translation-equivalence class of walls within a family.
struct WallClass {
    IVec gradient;
    LevelSet class_prog; // (representative level, class period)
    Rat rep_level;
};

std::vector<WallClass> wall_classes(const WallArrangement& walls_g,
                                    const LeviArrangement& arr_g,
                                    const LeviArrangement& arr_theta, int dim) {
    // Translation lattice conditions from the functional families of both
    // arrangements: g(v) in period * Z.
    QMat rows;
    for (const auto* arr : {&arr_g, &arr_theta})
        for (const auto& fam : arr->families)
            for (const auto& ls : fam.levels)
                rows.push_back(scale(Rat(1) / ls.period, fam.gradient));
    QMat basis = lattice_basis(rows, dim);

    std::vector<WallClass> out;
    for (const auto& fam : walls_g.families) {
        QVec coords;
        if (!solve_left(basis, to_qvec(fam.gradient), coords))
            throw Error("wall gradient outside the translation condition span");
        Rat content(0);
        for (const auto& c : coords) content = rat_gcd(content, c);
        for (const auto& ls : fam.levels) {
            Rat ratio = content / ls.period;
            if (!ratio.is_integer() || ratio.sign() <= 0)
                throw Error("translation content incompatible with wall progression");
            for (long long k = 0; k < ratio.num; ++k) {
                WallClass wc;
                wc.gradient = fam.gradient;
                wc.rep_level = ls.offset + Rat(k) * ls.period;
                wc.class_prog = LevelSet{wc.rep_level, content}.normalized();
                out.push_back(wc);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const WallClass& a, const WallClass& b) {
        if (a.gradient != b.gradient) return a.gradient < b.gradient;
        if (a.class_prog.period != b.class_prog.period)
            return a.class_prog.period < b.class_prog.period;
        return a.class_prog.offset < b.class_prog.offset;
    });
    return out;
}

bool wall_in_arrangement(const WallArrangement& walls, const Wall& w) {
    for (const auto& fam : walls.families) {
        if (fam.gradient != w.gradient) continue;
        for (const auto& ls : fam.levels)
            if (ls.contains(w.level)) return true;
    }
    return false;
}

// A point on the wall lying on no other wall of the arrangement.
QVec generic_point_on_wall(const WallArrangement& walls, const Wall& w) {
    int r = walls.dim;
    QVec g = to_qvec(w.gradient);
    QVec p0 = scale(-w.level / dot(g, g), g);
    QMat tangent = kernel_basis(QMat{g}, r);

    auto acceptable = [&](const QVec& p) {
        for (const auto& fam : walls.families) {
            Rat v(0);
            for (size_t i = 0; i < fam.gradient.size(); ++i)
                v += Rat(fam.gradient[i]) * p[i];
            for (const auto& ls : fam.levels) {
                if (!ls.contains(-v)) continue;
                if (!(fam.gradient == w.gradient && -v == w.level)) return false;
            }
        }
        return true;
    };
    if (tangent.empty()) {
        if (!acceptable(p0)) throw Error("wall point is not generic");
        return p0;
    }
    for (long long b = 1; b <= 8; ++b) {
        QVec dir(r, Rat(0));
        Rat pw(1);
        for (const auto& t : tangent) {
            dir = add(dir, scale(pw, t));
            pw *= Rat(b + 1);
        }
        for (long long kk = 2; kk <= 4096; kk *= 2) {
            QVec p = add(p0, scale(Rat(1, kk), dir));
            if (acceptable(p)) return p;
        }
    }
    throw Error("no generic point found on the wall");
}

std::string labels_string(const std::vector<OrbitLabel>& labels) {
    std::string s;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (i) s += "+";
        s += labels[i].str();
    }
    return s;
}

struct QuotientData {
    std::vector<int> indices; // into the ambient system's gradients
    std::vector<int> levi_part;
    std::vector<OrbitLabel> labels;
    std::vector<OrbitLabel> levi_labels;
};

QuotientData quotient_at(const AffineRootSystem& sys, const std::vector<int>& levi,
                         const QVec& x, const QMat& frob_char) {
    QuotientData qd;
    qd.indices = reductive_quotient_roots(sys, x);
    std::set<int> levi_set(levi.begin(), levi.end());
    std::vector<QVec> roots, coroots;
    for (int i : qd.indices) {
        roots.push_back(sys.gradients[i]);
        coroots.push_back(sys.cogradients[i]);
        if (levi_set.count(i)) qd.levi_part.push_back(i);
    }
    if (!roots.empty()) qd.labels = orbit_labels(roots, coroots, frob_char);
    if (!qd.levi_part.empty()) {
        std::vector<QVec> lr, lc;
        for (int i : qd.levi_part) {
            lr.push_back(sys.gradients[i]);
            lc.push_back(sys.cogradients[i]);
        }
        qd.levi_labels = orbit_labels(lr, lc, frob_char);
    }
    return qd;
}

} // namespace

Report run_pipeline(const BlockSpec& spec, const ParameterTable* table) {
    Report rep;
    rep.spec = spec;
    int rank = spec.datum.rank;

    // The base point is a rational point of the building: Frobenius-fixed.
    if (matvec(spec.frob.cocharacter_matrix(), spec.x0) != spec.x0)
        throw ValidationError("x0 must be fixed by the Frobenius action");

    AffineRootSystem affine_g = from_levels(spec.datum, spec.levels);
    rep.theta_roots = theta_root_subsystem(spec.datum, spec.theta);
    AffineRootSystem aff_theta = theta_affine_subsystem(affine_g, rep.theta_roots);
    QVec x_s = choose_special_point(aff_theta);
    rep.normalization = normalize(aff_theta, x_s);
    rep.g_theta = build_theta_datum(spec.datum, rep.normalization, spec.frob);

    std::vector<QVec> levi_vecs;
    for (int i : spec.levi) levi_vecs.push_back(to_qvec(spec.datum.roots[i]));
    rep.m_theta = build_theta_levi(rep.g_theta, levi_vecs);
    rep.g_theta.levi = rep.m_theta;

    // Shared-apartment certificate: the Frobenius-fixed directions killed by
    // the Levi roots must agree on both sides.
    std::vector<QVec> dirs =
        direction_lattice(levi_vecs, spec.frob.cocharacter_matrix(), rank);
    std::vector<QVec> m_theta_vecs;
    for (int i : rep.m_theta) m_theta_vecs.push_back(rep.g_theta.roots_old_coords[i]);
    QMat frob_theta_co = inverse(transpose(rep.g_theta.frob_char_old));
    std::vector<QVec> dirs_theta = direction_lattice(m_theta_vecs, frob_theta_co, rank);
    if (!same_span(dirs, dirs_theta))
        throw CertificateError(
            "apartment mismatch: A_M and A_{M_theta} span different direction spaces "
            "(the torus is not elliptic in M for these inputs)");
    rep.apartment_certified = true;

    ApartmentSubspace sub{spec.x0, dirs};
    LeviArrangement arr_g = restrict_to_levi(affine_g, spec.levi, sub);
    WallArrangement walls_g = walls_of(arr_g);
    QVec origin(static_cast<int>(dirs.size()), Rat(0));
    if (!is_generic(walls_g, origin))
        throw ValidationError("x0 lies on a wall of the Levi-apartment arrangement");

    LeviArrangement arr_theta = restrict_to_levi(rep.normalization.normalized,
                                                 rep.m_theta, sub);
    WallArrangement walls_theta_arr = walls_of(arr_theta);
    ThetaWalls tw = theta_walls(walls_g, walls_theta_arr);
    rep.inclusion_certified = tw.inclusion_certified;

    // Classify the walls and resolve parameters per class.
    std::vector<WallClass> classes =
        wall_classes(walls_g, arr_g, arr_theta, static_cast<int>(dirs.size()));
    for (const auto& wc : classes) {
        WallClassReport wr;
        wr.gradient = wc.gradient;
        wr.progression = wc.class_prog;
        wr.level = wc.rep_level;
        Wall wall{wc.gradient, wc.rep_level};
        wr.in_theta = wall_in_arrangement(walls_theta_arr, wall);

        QVec h = generic_point_on_wall(walls_g, wall);
        QVec x_h = spec.x0;
        for (size_t i = 0; i < dirs.size(); ++i) x_h = add(x_h, scale(h[i], dirs[i]));

        QuotientData qtheta = quotient_at(rep.normalization.normalized, rep.m_theta,
                                          x_h, rep.g_theta.frob_char_old);
        wr.theta_type = labels_string(qtheta.labels);
        wr.levi_type = qtheta.levi_part.empty() ? "torus" : labels_string(qtheta.levi_labels);

        if (!wr.in_theta) {
            // Excluded from the theta arrangement: the attached induced module
            // stays irreducible, so the parameter is 1 and the wall is not
            // relevant.
            wr.q_exponent = Rat(0);
            wr.q_value = Rat(1);
            wr.source = "theta-complement";
            wr.relevant = 0;
        } else if (qtheta.levi_part.empty() && qtheta.labels.size() == 1 &&
                   qtheta.labels[0].type.family == 'A' && qtheta.labels[0].type.rank == 1) {
            wr.q_exponent = Rat(qtheta.labels[0].components);
            wr.source = "principal-series";
            wr.relevant = 1;
        } else if (table) {
            const ParameterTableEntry* e =
                table->find(wr.theta_type, wr.levi_type, spec.options.cuspidal_label);
            if (e) {
                wr.q_exponent = e->exponent;
                wr.source = "table: " + e->provenance;
                wr.relevant = 1; // positive exponent
            } else {
                wr.source = "unresolved: no table entry for " + wr.theta_type + "/" +
                            wr.levi_type + "/" + spec.options.cuspidal_label;
                wr.relevant = -1;
            }
        } else {
            wr.source = "unresolved: not decidable here";
            wr.relevant = -1;
        }
        if (wr.q_exponent && spec.options.q) {
            Rat value;
            if (rational_power(Rat(*spec.options.q), *wr.q_exponent, value))
                wr.q_value = value;
        }
        if (wr.relevant == -1) rep.presentation_complete = false;

        // Oracle cross-check on the ambient side, where the class is a
        // principal-series situation at desk scale.
        if (spec.options.check_oracle && spec.options.q) {
            QuotientData qg = quotient_at(affine_g, spec.levi, x_h,
                                          to_qmat(spec.frob.matrix));
            if (qg.levi_part.empty() && qg.labels.size() == 1 &&
                qg.labels[0].type.family == 'A' && qg.labels[0].type.rank == 1) {
                int d = qg.labels[0].components;
                long long qd = 1;
                for (int i = 0; i < d; ++i) qd *= *spec.options.q;
                static const std::set<long long> kSupported{2, 3, 4, 5, 7, 8, 9};
                Rat pairing = dot(spec.theta.s,
                                  affine_g.cogradients[qg.indices[0]]).frac();
                Rat exp_scale = Rat(qd - 1) * pairing;
                if (kSupported.count(qd) && exp_scale.is_integer()) {
                    OracleCheck oc;
                    oc.wall = vec_str(to_qvec(wc.gradient)) + " + " + wc.rep_level.str();
                    oc.group = "SL2(F_" + std::to_string(qd) + ")";
                    oc.character = "order " +
                                   std::to_string(pairing.is_zero() ? 1 : pairing.den);
                    oc.expected = wr.in_theta ? Rat(qd) : Rat(1);
                    FiniteMatrixGroup grp =
                        build_group(GroupFamily::SL, 2, static_cast<int>(qd));
                    TorusCharacter chi;
                    chi.exponents = {static_cast<int>(exp_scale.num %
                                                      (qd == 2 ? 1 : qd - 1)),
                                     0};
                    if (qd == 2) chi.exponents = {0, 0};
                    QParameterResult qr = q_parameter(grp, borel_of(grp), chi);
                    oc.oracle = qr.q_value;
                    oc.match = oc.oracle == oc.expected;
                    rep.oracle_checks.push_back(oc);
                    if (!oc.match)
                        throw CertificateError(
                            "oracle disagrees with the pipeline parameter at wall " +
                            oc.wall);
                }
            }
        }
        rep.classes.push_back(wr);
    }

    // Assemble the Hecke presentation from the relevant walls.
    WallArrangement relevant;
    relevant.dim = static_cast<int>(dirs.size());
    for (const auto& wr : rep.classes) {
        if (wr.relevant != 1) continue;
        bool merged = false;
        for (auto& fam : relevant.families)
            if (fam.gradient == wr.gradient) {
                fam.levels.push_back(wr.progression);
                merged = true;
            }
        if (!merged)
            relevant.families.push_back(WallFamily{wr.gradient, {wr.progression}});
    }
    for (auto& fam : relevant.families) std::sort(fam.levels.begin(), fam.levels.end());

    HeckeAlgebra alg = from_arrangement(relevant, origin,
                                        spec.omega_given ? &spec.omega : nullptr);
    rep.presentation = alg.cox;
    rep.omega_size = alg.omega.size;

    for (const auto& w : alg.simple_walls_input) {
        int found = -1;
        for (size_t c = 0; c < rep.classes.size(); ++c) {
            const auto& wr = rep.classes[c];
            if (wr.gradient == w.gradient && wr.progression.contains(w.level)) {
                found = static_cast<int>(c);
                break;
            }
        }
        if (found < 0) throw Error("simple wall does not belong to any class");
        rep.simple_class_index.push_back(found);
        rep.parameters.push_back(QPoly::monomial(*rep.classes[found].q_exponent));
    }
    ParameterFunction pf{rep.parameters};
    validate_parameters(alg, pf);
    return rep;
}

namespace {


json qvec_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json ivec_json(const IVec& v) {
    json a = json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

json imat_json(const IMat& m) {
    json a = json::array();
    for (const auto& r : m) a.push_back(ivec_json(r));
    return a;
}

} // namespace

std::string emit_report(const Report& r, const std::string& mode) {
    json j;
    j["schema_version"] = 1;
    j["input"]["rank"] = r.spec.datum.rank;
    j["input"]["num_roots"] = r.spec.datum.roots.size();
    j["input"]["levi"] = r.spec.levi;
    j["input"]["s"] = qvec_json(r.spec.theta.s);
    j["input"]["x0"] = qvec_json(r.spec.x0);
    if (r.spec.options.q) j["input"]["q"] = *r.spec.options.q;

    json troots = json::array();
    for (int i : r.theta_roots) troots.push_back(ivec_json(r.spec.datum.roots[i]));
    j["theta_subsystem"]["roots"] = troots;
    j["theta_subsystem"]["size"] = r.theta_roots.size();

    j["normalization"]["x_s"] = qvec_json(r.normalization.x_s);
    json scales = json::array();
    for (const auto& [idx, ra] : r.normalization.scale) {
        json e;
        e["gradient"] = qvec_json(r.normalization.base.gradients[idx]);
        e["r"] = ra.str();
        scales.push_back(e);
    }
    j["normalization"]["scales"] = scales;
    json nroots = json::array();
    for (const auto& g : r.normalization.normalized.gradients) nroots.push_back(qvec_json(g));
    j["normalization"]["normalized_roots"] = nroots;

    j["g_theta"]["rank"] = r.g_theta.datum.rank;
    j["g_theta"]["roots"] = imat_json(r.g_theta.datum.roots);
    j["g_theta"]["coroots"] = imat_json(r.g_theta.datum.coroots);
    j["g_theta"]["frobenius"]["matrix"] = imat_json(r.g_theta.frob.matrix);
    j["g_theta"]["frobenius"]["order"] = r.g_theta.frob.order;
    json basis = json::array();
    for (const auto& row : r.g_theta.cochar_basis) basis.push_back(qvec_json(row));
    j["g_theta"]["cocharacter_basis"] = basis;
    j["g_theta"]["levi"] = r.m_theta;

    j["certificates"]["apartment_match"] = r.apartment_certified;
    j["certificates"]["h_theta_subset_h"] = r.inclusion_certified;

    json walls = json::array();
    for (const auto& w : r.classes) {
        json e;
        e["gradient"] = ivec_json(w.gradient);
        e["level"] = w.level.str();
        e["class_offset"] = w.progression.offset.str();
        e["class_period"] = w.progression.period.str();
        e["in_h_theta"] = w.in_theta;
        e["theta_quotient_type"] = w.theta_type;
        e["levi_type"] = w.levi_type;
        if (w.q_exponent) {
            e["q_exponent"] = w.q_exponent->str();
            e["q_s"] = QPoly::monomial(*w.q_exponent).str();
        } else {
            e["q_exponent"] = nullptr;
            e["q_s"] = nullptr;
        }
        if (w.q_value) e["q_value"] = w.q_value->str();
        else e["q_value"] = nullptr;
        e["relevant"] = w.relevant == 1 ? json(true)
                       : w.relevant == 0 ? json(false)
                                         : json("not decidable here");
        e["source"] = w.source;
        walls.push_back(e);
    }
    j["walls"] = walls;

    j["hecke"]["num_generators"] = r.presentation.num_gens;
    j["hecke"]["coxeter_matrix"] = r.presentation.m;
    json params = json::array();
    for (const auto& p : r.parameters) params.push_back(p.str());
    j["hecke"]["parameters"] = params;
    j["hecke"]["simple_wall_classes"] = r.simple_class_index;
    j["hecke"]["omega_size"] = r.omega_size;
    j["hecke"]["presentation_complete"] = r.presentation_complete;

    json checks = json::array();
    for (const auto& oc : r.oracle_checks) {
        json e;
        e["wall"] = oc.wall;
        e["group"] = oc.group;
        e["character"] = oc.character;
        e["expected"] = oc.expected.str();
        e["oracle"] = oc.oracle.str();
        e["match"] = oc.match;
        checks.push_back(e);
    }
    j["oracle_checks"] = checks;

    if (mode == "machine") return j.dump(1);
    if (mode != "text") throw ValidationError("unknown emit mode: " + mode);

    std::ostringstream out;
    out << "theta subsystem: " << r.theta_roots.size() << " of "
        << r.spec.datum.roots.size() << " roots\n";
    out << "special point x_s = " << vec_str(r.normalization.x_s) << "\n";
    out << "normalized system: " << r.normalization.normalized.gradients.size()
        << " roots";
    for (const auto& [idx, ra] : r.normalization.scale)
        if (ra != Rat(1)) out << ", r[" << vec_str(r.normalization.base.gradients[idx])
                              << "] = " << ra.str();
    out << "\n";
    out << "G_theta: rank " << r.g_theta.datum.rank << ", "
        << r.g_theta.datum.roots.size() << " roots, Frobenius order "
        << r.g_theta.frob.order << "\n";
    out << "M_theta: " << r.m_theta.size() << " roots\n";
    out << "certificates: apartment " << (r.apartment_certified ? "ok" : "FAIL")
        << ", h_theta subset h " << (r.inclusion_certified ? "ok" : "FAIL") << "\n";
    out << "wall classes (" << r.classes.size() << "):\n";
    for (const auto& w : r.classes) {
        out << "  " << vec_str(to_qvec(w.gradient)) << " + " << w.level.str()
            << " (mod " << w.progression.period.str() << ")";
        out << (w.in_theta ? "  [theta]" : "         ");
        out << "  type " << (w.theta_type.empty() ? "-" : w.theta_type);
        out << "  levi " << w.levi_type;
        if (w.q_exponent) out << "  q_s = q^" << w.q_exponent->str();
        if (w.q_value) out << " = " << w.q_value->str();
        out << "  " << (w.relevant == 1 ? "relevant" :
                        w.relevant == 0 ? "irrelevant" : "undecided");
        out << "  (" << w.source << ")\n";
    }
    out << "hecke presentation: " << r.presentation.num_gens << " generators";
    if (r.presentation.num_gens) {
        out << ", coxeter matrix";
        for (const auto& row : r.presentation.m) {
            out << " [";
            for (size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << (row[i] == 0 ? std::string("inf")
                                                      : std::to_string(row[i]));
            out << "]";
        }
        out << ", parameters";
        for (const auto& p : r.parameters) out << " " << p.str();
    }
    out << ", omega of order " << r.omega_size;
    out << (r.presentation_complete ? "" : "  (INCOMPLETE: undecided classes)") << "\n";
    for (const auto& oc : r.oracle_checks)
        out << "oracle " << oc.group << " at " << oc.wall << ": expected "
            << oc.expected.str() << ", got " << oc.oracle.str()
            << (oc.match ? " (match)" : " (MISMATCH)") << "\n";
    return out.str();
}

} // namespace hecke
