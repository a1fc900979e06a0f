#pragma once

// Subcommands of the relsw command-line tool. Each returns the process exit
// code: 0 success, 2 schema errors, 3 formula preconditions, 4 solver
// non-convergence, 1 anything else.

#include <iostream>
#include <optional>
#include <string>

#include "relsw/io.hpp"

namespace relsw {

struct CommandOptions {
    std::filesystem::path input;
    std::filesystem::path out;
    unsigned long long seed = 0;
    std::optional<int> grid;
    std::optional<double> tolerance;
    int depth = 3;
};

inline int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Schema: return 2;
        case ErrorKind::Precondition:
        case ErrorKind::NonCharacteristic:
        case ErrorKind::Hypothesis:
        case ErrorKind::MissingEntry: return 3;
        case ErrorKind::Convergence: return 4;
        case ErrorKind::Internal: return 1;
    }
    return 1;
}

namespace detail {

inline std::string class_string(const HomologyClass& c) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < c.rank(); ++i) {
        if (i) s += " ";
        s += std::to_string(c.coords(i));
    }
    return s + ")";
}

struct Loaded {
    PairSpecFile spec;
    PairXSigma pair;
    std::vector<LogSpinc> spinc;
};

inline Loaded load_all(const CommandOptions& o) {
    PairSpecFile spec = load_spec(o.input);
    PairXSigma pair = build_pair(spec.pair);
    std::vector<LogSpinc> spinc;
    for (const auto& s : spec.pair.spinc) spinc.push_back(build_spinc(pair, spec.pair, s));
    return {std::move(spec), std::move(pair), std::move(spinc)};
}

inline CsvTable dims_table(const PairXSigma& pair, const std::vector<LogSpinc>& spinc) {
    CsvTable t({"spinc", "c1L", "m", "degree_along_sigma", "d_main", "d_adapted", "d_reducible", "xi_compact",
                "xi_adapted", "route_check"});
    for (std::size_t i = 0; i < spinc.size(); ++i) {
        const auto r = evaluate_dimensions(pair, spinc[i]);
        t.row(i, class_string(spinc[i].c1L), spinc[i].m, r.degree_along_sigma, r.d_main, r.d_adapted,
              r.d_reducible ? std::to_string(*r.d_reducible) : std::string("NA"), r.xi_compact, r.xi_adapted,
              r.route_check);
    }
    return t;
}

struct ComponentTables {
    CsvTable components{{"spinc", "index", "kind", "m", "d", "twisting_degree", "theta_flag", "nondegenerate",
                         "csd_level", "real_dimension"}};
    CsvTable ordering{{"spinc", "from", "to", "admissible"}};
    CsvTable perturbed{{"spinc", "m", "d", "q"}};
};

inline ComponentTables component_tables(const PairSpecFile& spec, const PairXSigma& pair,
                                        const std::vector<LogSpinc>& spinc) {
    ComponentTables out;
    const CircleBundle Y = circle_bundle_of(pair);
    std::optional<NuZeroSet> zeros;
    if (spec.nu) zeros = make_nu_zero_set(pair.genus(), *spec.nu);
    for (std::size_t i = 0; i < spinc.size(); ++i) {
        const Rational deg = twisting_degree(spinc[i]);
        require(is_integer(deg), ErrorKind::Precondition,
                "component enumeration needs an integer twisting degree (spinc " + std::to_string(i) + ")");
        const auto comps = enumerate_components(Y, pullback_class(Y, deg.numerator()));
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const auto& k = comps[c];
            out.components.row(i, c, to_string(k.kind), k.is_reducible() ? std::string("NA") : std::to_string(k.m),
                               k.is_reducible() ? std::string("NA") : std::to_string(k.d),
                               k.is_reducible() ? std::string("NA") : std::to_string(k.twisting_degree), k.theta_flag,
                               k.nondegenerate, k.csd_level, k.real_dimension(pair.genus()));
            if (zeros && !k.is_reducible())
                for (const auto& q : perturbed_components(*zeros, k.d)) out.perturbed.row(i, k.m, k.d, divisor_label(q));
        }
        for (std::size_t a = 0; a < comps.size(); ++a)
            for (std::size_t b = 0; b < comps.size(); ++b)
                if (a != b && comps[a].kind != ComponentKind::ReducibleEmpty &&
                    comps[b].kind != ComponentKind::ReducibleEmpty)
                    out.ordering.row(i, a, b, tunneling_admissible(comps[a], comps[b]));
    }
    return out;
}

inline void emit(ArtifactSink& sink, std::ostream& out, const std::string& name, const CsvTable& t) {
    out << "# " << name << "\n" << t.str();
    sink.add(name, t.str());
}

inline int cmd_dims(const CommandOptions& o, std::ostream& out) {
    const auto L = load_all(o);
    ArtifactSink sink(o.out);
    emit(sink, out, "dims.csv", dims_table(L.pair, L.spinc));
    sink.write();
    return 0;
}

inline int cmd_components(const CommandOptions& o, std::ostream& out) {
    const auto L = load_all(o);
    ArtifactSink sink(o.out);
    auto t = component_tables(L.spec, L.pair, L.spinc);
    emit(sink, out, "components.csv", t.components);
    if (L.spec.nu) emit(sink, out, "perturbed.csv", t.perturbed);
    sink.write();
    return 0;
}

inline int cmd_report(const CommandOptions& o, std::ostream& out) {
    const auto L = load_all(o);
    ArtifactSink sink(o.out);
    const CircleBundle Y = circle_bundle_of(L.pair);
    const auto h2 = gysin_h2(Y);
    CsvTable summary({"manifold", "genus", "sigma_self", "ell", "euler_complement", "signature_complement",
                      "h2_free_rank", "h2_torsion_order", "compact"});
    summary.row(L.pair.manifold().name(), L.pair.genus(), L.pair.sigma_self(), Y.degree, L.pair.euler_complement(),
                L.pair.signature_complement(), h2.free_rank, h2.torsion_order, compactness_certificate(L.pair));
    emit(sink, out, "summary.csv", summary);
    emit(sink, out, "dims.csv", dims_table(L.pair, L.spinc));
    auto t = component_tables(L.spec, L.pair, L.spinc);
    emit(sink, out, "components.csv", t.components);
    emit(sink, out, "csd_ordering.csv", t.ordering);
    if (L.spec.nu) emit(sink, out, "perturbed.csv", t.perturbed);
    sink.write();
    return 0;
}

inline int cmd_tunneling(const CommandOptions& o, std::ostream& out) {
    const auto L = load_all(o);
    ArtifactSink sink(o.out);
    const Int g = L.pair.genus();
    const Int ell = circle_bundle_of(L.pair).degree;
    std::optional<NuZeroSet> zeros;
    if (L.spec.nu) zeros = make_nu_zero_set(g, *L.spec.nu);
    CsvTable t({"a", "b_plus", "b_minus", "g", "ell", "adapted", "empty", "dimension", "finite_count", "model"});
    for (const auto& s : L.spec.tunneling) {
        const auto tc = make_tunneling_class(s.a, s.b_plus, s.b_minus, g, ell);
        const auto m = tunneling_moduli(tc, s.adapted, zeros);
        t.row(s.a, s.b_plus, s.b_minus, g, ell, s.adapted, m.empty,
              m.dimension ? std::to_string(*m.dimension) : std::string("NA"),
              m.finite_count ? std::to_string(*m.finite_count) : std::string("NA"), m.model);
    }
    emit(sink, out, "tunneling.csv", t);
    sink.write();
    return 0;
}

inline int cmd_specflow(const CommandOptions& o, std::ostream& out) {
    const auto spec = load_spec(o.input);
    require(spec.specflow.has_value(), ErrorKind::Schema, "schema: specflow block missing");
    const auto& sf = *spec.specflow;
    ArtifactSink sink(o.out);
    CsvTable t({"instance", "dim", "kernel", "brute_flow", "start_contribution", "interior", "predicted_flow", "neg_Q",
                "pos_Q", "ker_R_dim", "higher_order", "agree"});
    auto run = [&](const std::string& id, const RealMatrix& H0, const RealMatrix& P, int samples) {
        const auto brute = spectral_flow_bruteforce({H0, P, samples});
        const auto pred = resonance_prediction(H0, P, o.depth);
        std::string higher;
        for (const auto& [k, c] : pred.higher_order) higher += (higher.empty() ? "" : ";") + std::to_string(k) + ":" + std::to_string(c);
        t.row(id, H0.rows(), pred.dim_ker_H0, brute.flow, brute.start_contribution, brute.interior, pred.predicted_flow,
              pred.neg_Q, pred.pos_Q, pred.ker_R_dim, higher.empty() ? std::string("none") : higher,
              brute.start_contribution == pred.predicted_flow);
    };
    if (sf.H0) run("input", *sf.H0, *sf.P, sf.samples);
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < sf.random_count; ++i) {
        const auto inst = random_spectral_instance(rng);
        run("random" + std::to_string(i), inst.path.H0, inst.path.P, sf.samples);
    }
    emit(sink, out, "specflow.csv", t);
    sink.write();
    return 0;
}

inline int cmd_vortex(const CommandOptions& o, std::ostream& out) {
    const auto spec = load_spec(o.input);
    require(spec.vortex.has_value(), ErrorKind::Schema, "schema: vortex block missing");
    VortexProblem p = build_vortex_problem(*spec.vortex);
    if (o.grid) p.geometry.N = *o.grid;
    if (o.tolerance) p.tolerance = *o.tolerance;
    p.seed = o.seed;
    const auto sol = solve_vortex(p);
    const auto id = verify_integrated_identity(sol, p);
    ArtifactSink sink(o.out);
    CsvTable s({"N", "d", "tau", "area", "newton_iterations", "residual_sup", "curvature_integral",
                "curvature_over_2pi", "plaquette_phase_sum", "norm_sq_quadrature", "norm_sq_identity",
                "relative_discrepancy", "zero_count"});
    int zeros = 0;
    for (const auto& z : sol.zero_locations) zeros += z.multiplicity;
    s.row(p.geometry.N, p.degree(), p.tau, p.geometry.area, sol.newton_iterations, sol.residual_sup,
          sol.curvature_integral, sol.curvature_integral / (2.0 * std::numbers::pi), sol.plaquette_phase_sum,
          id.norm_sq_quadrature, id.norm_sq_identity, id.relative_discrepancy, zeros);
    emit(sink, out, "vortex_summary.csv", s);
    CsvTable z({"s1", "s2", "multiplicity"});
    for (const auto& zz : sol.zero_locations) z.row(zz.location.s1, zz.location.s2, zz.multiplicity);
    emit(sink, out, "zeros.csv", z);
    sink.add("phi_modulus.grid", encode_grid(sol.phi_modulus, p.geometry, "phi_modulus"));
    sink.add("u_field.grid", encode_grid(sol.u_field, p.geometry, "u"));
    sink.write();
    return 0;
}

inline int cmd_sum(const CommandOptions& o, std::ostream& out) {
    const auto L = load_all(o);
    require(L.spec.sum.has_value(), ErrorKind::Schema, "schema: sum block missing");
    const auto& ss = *L.spec.sum;
    const PairXSigma pair2 = build_pair(ss.second);
    const SplitProblem sp = make_split_problem(L.pair, pair2, ss.rho1, ss.rho2);
    ArtifactSink sink(o.out);

    CsvTable split({"m1", "m2", "d"});
    for (const auto& [m1, m2] : enumerate_splittings(sp)) split.row(m1, m2, (sp.genus() - 1) - abs_int(m1));
    emit(sink, out, "splittings.csv", split);

    if (!ss.invariants_csv.empty()) {
        require(L.spec.nu.has_value(), ErrorKind::Schema, "schema: the sum formula needs a nu block");
        const auto zeros = make_nu_zero_set(sp.genus(), *L.spec.nu);
        const auto [t1, t2] = load_invariant_tables(L.spec.base_dir / ss.invariants_csv);
        const SignTable signs = ss.signs_csv.empty() ? SignTable{} : load_sign_table(L.spec.base_dir / ss.signs_csv);
        CsvTable rhs({"rhs"});
        rhs.row(sum_rhs_pointwise(sp, t1, t2, zeros, signs));
        emit(sink, out, "sum_rhs.csv", rhs);
    }

    CsvTable add({"case", "glued_dimension", "d_adapted_1", "d_adapted_2", "additive"});
    for (std::size_t i = 0; i < ss.glued.size(); ++i) {
        const auto& g = ss.glued[i];
        const LogSpinc s1 = build_spinc(L.pair, L.spec.pair, SpincSpec{g.c1L_1, std::nullopt, std::nullopt});
        const LogSpinc s2 = build_spinc(pair2, ss.second, SpincSpec{g.c1L_2, std::nullopt, std::nullopt});
        const GluedData data{g.euler, g.signature, g.c1_square};
        const bool ok = dimension_additivity_check(sp, s1, s2, data);
        add.row(i, dim_classic_closed(g.c1_square, g.euler, g.signature), dim_adapted(L.pair, s1),
                dim_adapted(pair2, s2), ok);
    }
    emit(sink, out, "additivity.csv", add);
    sink.write();
    return 0;
}

}  // namespace detail

inline int run_command(const std::string& name, const CommandOptions& o, std::ostream& out, std::ostream& err) {
    auto report = [&](const std::string& kind, const std::string& msg, int code) {
        Json rec = {{"error", kind}, {"message", msg}, {"exit_code", code}};
        err << rec.dump() << "\n";
        if (!o.out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(o.out, ec);
            std::ofstream f(o.out / "error.json");
            f << rec.dump(2) << "\n";
        }
        return code;
    };
    try {
        if (name == "report") return detail::cmd_report(o, out);
        if (name == "dims") return detail::cmd_dims(o, out);
        if (name == "components") return detail::cmd_components(o, out);
        if (name == "tunneling") return detail::cmd_tunneling(o, out);
        if (name == "specflow") return detail::cmd_specflow(o, out);
        if (name == "vortex") return detail::cmd_vortex(o, out);
        if (name == "sum") return detail::cmd_sum(o, out);
        return report("usage", "unknown command '" + name + "'", 1);
    } catch (const Error& e) {
        return report(to_string(e.kind()), e.what(), exit_code(e.kind()));
    } catch (const Json::exception& e) {
        return report("schema", e.what(), 2);
    } catch (const std::exception& e) {
        return report("internal", e.what(), 1);
    }
}

}  // namespace relsw
