#pragma once

// Input schema (JSON), CSV and binary-grid writers, and the checksum manifest.

#include <openssl/evp.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "relsw/catalog.hpp"
#include "relsw/specflow.hpp"
#include "relsw/sum_formula.hpp"
#include "relsw/vortex.hpp"

namespace relsw {

using Json = nlohmann::ordered_json;

struct ManifoldSpec {
    std::string name;
    Int euler = 0;
    Int signature = 0;
    Int b_plus = 0;
    std::vector<std::vector<Int>> gram;
    std::optional<std::vector<Int>> canonical;
};

struct SigmaSpec {
    std::vector<Int> vector;
    Int genus = 0;
    Int b_plus_complement = 0;
};

struct SpincSpec {
    std::optional<std::vector<Int>> c1L;
    std::optional<std::vector<Int>> twisting;
    std::optional<Rational> m;  // optional cross-check of c1L.Sigma / 2
};

struct PairBlock {
    ManifoldSpec manifold;
    SigmaSpec sigma;
    std::vector<SpincSpec> spinc;
};

struct VortexSpec {
    int N = 128;
    double modulus_re = 0.0, modulus_im = 1.0;
    double area = 16.0 * std::numbers::pi;
    double tau = 1.0;
    std::vector<std::pair<double, double>> divisor;
    double tolerance = 1e-10;
    int max_iterations = 50;
};

struct TunnelingSpec {
    Int a = 0, b_plus = 0, b_minus = 0;
    bool adapted = false;
};

struct SpecflowSpec {
    std::optional<RealMatrix> H0, P;
    int samples = 64;
    int random_count = 0;
};

struct GluedSpec {
    std::vector<Int> c1L_1, c1L_2;
    Int euler = 0, signature = 0, c1_square = 0;
};

struct SumSpec {
    PairBlock second;
    Int rho1 = 0, rho2 = 0;
    std::string invariants_csv;  // columns side,m,q,value
    std::string signs_csv;       // columns m1,m2,q,sign (optional)
    std::vector<GluedSpec> glued;
};

struct PairSpecFile {
    PairBlock pair;
    std::optional<std::vector<Int>> nu;
    std::optional<VortexSpec> vortex;
    std::vector<TunnelingSpec> tunneling;
    std::optional<SpecflowSpec> specflow;
    std::optional<SumSpec> sum;
    std::filesystem::path base_dir;
};

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& where, const std::string& what) {
    fail(ErrorKind::Schema, "schema: " + where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) schema_fail(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline Int as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_fail(where, "expected an integer");
    return j.get<Int>();
}

inline double as_double(const Json& j, const std::string& where) {
    if (!j.is_number()) schema_fail(where, "expected a number");
    return j.get<double>();
}

inline std::vector<Int> as_int_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an integer array");
    std::vector<Int> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::vector<std::vector<Int>> as_int_matrix(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_fail(where, "expected an array of rows");
    std::vector<std::vector<Int>> m;
    for (std::size_t i = 0; i < j.size(); ++i) m.push_back(as_int_vector(j[i], where + "[" + std::to_string(i) + "]"));
    for (const auto& row : m)
        if (row.size() != m.size()) schema_fail(where, "gram matrix must be square");
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (m[i][k] != m[k][i]) schema_fail(where, "gram matrix must be symmetric");
    return m;
}

inline RealMatrix as_real_matrix(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) schema_fail(where, "expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    RealMatrix M(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) schema_fail(where, "matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k) M(i, k) = as_double(row[static_cast<std::size_t>(k)], where);
    }
    return M;
}

/// m given as an integer or a half-integer number.
inline Rational as_half_integer(const Json& j, const std::string& where) {
    const double x = as_double(j, where);
    const double twice = 2.0 * x;
    if (std::abs(twice - std::round(twice)) > 1e-12) schema_fail(where, "m must be an integer or half-integer");
    return Rational(static_cast<Int>(std::llround(twice)), 2);
}

inline Json rational_json(const Rational& r) {
    if (r.denominator() == 1) return Json(r.numerator());
    return Json(static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()));
}

inline ManifoldSpec parse_manifold(const Json& j, const std::string& where) {
    ManifoldSpec m;
    if (j.is_object() && j.contains("catalog")) {
        const std::string id = j.at("catalog").get<std::string>();
        std::smatch match;
        static const std::regex re(R"(E\((\d+)\))");
        if (!std::regex_match(id, match, re)) schema_fail(where, "unknown catalog entry '" + id + "'");
        const auto entry = elliptic_surface(std::stoll(match[1].str()));
        m.name = entry.manifold.name();
        m.euler = entry.manifold.euler();
        m.signature = entry.manifold.signature();
        m.b_plus = entry.manifold.b_plus();
        const auto& f = entry.manifold.form();
        m.gram.assign(f.rows(), std::vector<Int>(f.cols()));
        for (Eigen::Index r = 0; r < f.rows(); ++r)
            for (Eigen::Index c = 0; c < f.cols(); ++c) m.gram[r][c] = f(r, c);
        m.canonical = std::vector<Int>(entry.canonical.coords.data(),
                                       entry.canonical.coords.data() + entry.canonical.coords.size());
        return m;
    }
    m.name = j.contains("name") ? j.at("name").get<std::string>() : std::string("X");
    m.euler = as_int(field(j, "euler", where), where + ".euler");
    m.signature = as_int(field(j, "signature", where), where + ".signature");
    m.b_plus = as_int(field(j, "b_plus", where), where + ".b_plus");
    m.gram = as_int_matrix(field(j, "gram_matrix", where), where + ".gram_matrix");
    if (j.contains("canonical")) m.canonical = as_int_vector(j.at("canonical"), where + ".canonical");
    return m;
}

inline PairBlock parse_pair_block(const Json& j, const std::string& where) {
    PairBlock b;
    b.manifold = parse_manifold(field(j, "manifold", where), where + ".manifold");
    const Json& s = field(j, "sigma", where);
    b.sigma.vector = as_int_vector(field(s, "vector", where + ".sigma"), where + ".sigma.vector");
    b.sigma.genus = as_int(field(s, "genus", where + ".sigma"), where + ".sigma.genus");
    b.sigma.b_plus_complement = s.contains("b_plus_complement")
                                    ? as_int(s.at("b_plus_complement"), where + ".sigma.b_plus_complement")
                                    : b.manifold.b_plus;
    if (j.contains("spinc")) {
        const Json& list = j.at("spinc");
        if (!list.is_array()) schema_fail(where + ".spinc", "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string w = where + ".spinc[" + std::to_string(i) + "]";
            SpincSpec sp;
            if (list[i].contains("c1L")) sp.c1L = as_int_vector(list[i].at("c1L"), w + ".c1L");
            if (list[i].contains("twisting")) sp.twisting = as_int_vector(list[i].at("twisting"), w + ".twisting");
            if (sp.c1L.has_value() == sp.twisting.has_value()) schema_fail(w, "give exactly one of c1L, twisting");
            if (list[i].contains("m")) sp.m = as_half_integer(list[i].at("m"), w + ".m");
            b.spinc.push_back(sp);
        }
    }
    return b;
}

inline Json manifold_json(const ManifoldSpec& m) {
    Json j;
    j["name"] = m.name;
    j["euler"] = m.euler;
    j["signature"] = m.signature;
    j["b_plus"] = m.b_plus;
    j["gram_matrix"] = m.gram;
    if (m.canonical) j["canonical"] = *m.canonical;
    return j;
}

inline Json pair_block_json(const PairBlock& b) {
    Json j;
    j["manifold"] = manifold_json(b.manifold);
    j["sigma"] = {{"vector", b.sigma.vector}, {"genus", b.sigma.genus},
                  {"b_plus_complement", b.sigma.b_plus_complement}};
    Json list = Json::array();
    for (const auto& s : b.spinc) {
        Json e;
        if (s.c1L) e["c1L"] = *s.c1L;
        if (s.twisting) e["twisting"] = *s.twisting;
        if (s.m) e["m"] = rational_json(*s.m);
        list.push_back(e);
    }
    j["spinc"] = list;
    return j;
}

inline Json matrix_json(const RealMatrix& M) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index k = 0; k < M.cols(); ++k) r.push_back(M(i, k));
        rows.push_back(r);
    }
    return rows;
}

}  // namespace detail

/// Dense text format: first line the dimension n, then n rows of n numbers.
inline RealMatrix read_dense_matrix_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Schema, "cannot open matrix file " + path.string());
    long n = 0;
    require(static_cast<bool>(in >> n) && n > 0, ErrorKind::Schema, path.string() + ": missing dimension header");
    RealMatrix M(n, n);
    for (long i = 0; i < n; ++i)
        for (long k = 0; k < n; ++k)
            require(static_cast<bool>(in >> M(i, k)), ErrorKind::Schema, path.string() + ": truncated matrix data");
    return M;
}

inline PairSpecFile parse_spec(const Json& j, const std::filesystem::path& base_dir = {}) {
    if (!j.is_object()) detail::schema_fail("<root>", "expected an object");
    PairSpecFile f;
    f.base_dir = base_dir;
    f.pair = detail::parse_pair_block(j, "<root>");
    if (j.contains("nu")) f.nu = detail::as_int_vector(detail::field(j.at("nu"), "multiplicities", "nu"), "nu.multiplicities");
    if (j.contains("vortex")) {
        const Json& v = j.at("vortex");
        VortexSpec s;
        if (v.contains("N")) s.N = static_cast<int>(detail::as_int(v.at("N"), "vortex.N"));
        if (v.contains("modulus")) {
            const Json& m = v.at("modulus");
            if (!m.is_array() || m.size() != 2) detail::schema_fail("vortex.modulus", "expected [re, im]");
            s.modulus_re = detail::as_double(m[0], "vortex.modulus");
            s.modulus_im = detail::as_double(m[1], "vortex.modulus");
        }
        if (v.contains("area")) s.area = detail::as_double(v.at("area"), "vortex.area");
        if (v.contains("tau")) s.tau = detail::as_double(v.at("tau"), "vortex.tau");
        if (v.contains("tolerance")) s.tolerance = detail::as_double(v.at("tolerance"), "vortex.tolerance");
        if (v.contains("max_iterations"))
            s.max_iterations = static_cast<int>(detail::as_int(v.at("max_iterations"), "vortex.max_iterations"));
        if (v.contains("divisor")) {
            const Json& d = v.at("divisor");
            if (!d.is_array()) detail::schema_fail("vortex.divisor", "expected an array of [s1, s2]");
            for (const auto& p : d) {
                if (!p.is_array() || p.size() != 2) detail::schema_fail("vortex.divisor", "expected [s1, s2]");
                s.divisor.emplace_back(detail::as_double(p[0], "vortex.divisor"), detail::as_double(p[1], "vortex.divisor"));
            }
        }
        f.vortex = s;
    }
    if (j.contains("tunneling")) {
        for (const auto& t : j.at("tunneling")) {
            TunnelingSpec s;
            s.a = detail::as_int(detail::field(t, "a", "tunneling"), "tunneling.a");
            s.b_plus = detail::as_int(detail::field(t, "b_plus", "tunneling"), "tunneling.b_plus");
            s.b_minus = detail::as_int(detail::field(t, "b_minus", "tunneling"), "tunneling.b_minus");
            s.adapted = t.contains("adapted") && t.at("adapted").get<bool>();
            f.tunneling.push_back(s);
        }
    }
    if (j.contains("specflow")) {
        const Json& s = j.at("specflow");
        SpecflowSpec sf;
        if (s.contains("H0")) sf.H0 = detail::as_real_matrix(s.at("H0"), "specflow.H0");
        if (s.contains("P")) sf.P = detail::as_real_matrix(s.at("P"), "specflow.P");
        if (s.contains("H0_file")) sf.H0 = read_dense_matrix_text(base_dir / s.at("H0_file").get<std::string>());
        if (s.contains("P_file")) sf.P = read_dense_matrix_text(base_dir / s.at("P_file").get<std::string>());
        if (s.contains("samples")) sf.samples = static_cast<int>(detail::as_int(s.at("samples"), "specflow.samples"));
        if (s.contains("random_count"))
            sf.random_count = static_cast<int>(detail::as_int(s.at("random_count"), "specflow.random_count"));
        if (sf.H0.has_value() != sf.P.has_value()) detail::schema_fail("specflow", "give both H0 and P");
        f.specflow = sf;
    }
    if (j.contains("sum")) {
        const Json& s = j.at("sum");
        SumSpec ss;
        ss.second = detail::parse_pair_block(detail::field(s, "second", "sum"), "sum.second");
        if (s.contains("residues")) {
            const auto r = detail::as_int_vector(s.at("residues"), "sum.residues");
            if (r.size() != 2) detail::schema_fail("sum.residues", "expected [rho1, rho2]");
            ss.rho1 = r[0];
            ss.rho2 = r[1];
        }
        if (s.contains("invariants_csv")) ss.invariants_csv = s.at("invariants_csv").get<std::string>();
        if (s.contains("signs_csv")) ss.signs_csv = s.at("signs_csv").get<std::string>();
        if (s.contains("glued")) {
            for (const auto& g : s.at("glued")) {
                GluedSpec gs;
                gs.c1L_1 = detail::as_int_vector(detail::field(g, "c1L_1", "sum.glued"), "sum.glued.c1L_1");
                gs.c1L_2 = detail::as_int_vector(detail::field(g, "c1L_2", "sum.glued"), "sum.glued.c1L_2");
                gs.euler = detail::as_int(detail::field(g, "euler", "sum.glued"), "sum.glued.euler");
                gs.signature = detail::as_int(detail::field(g, "signature", "sum.glued"), "sum.glued.signature");
                gs.c1_square = detail::as_int(detail::field(g, "c1_square", "sum.glued"), "sum.glued.c1_square");
                ss.glued.push_back(gs);
            }
        }
        f.sum = ss;
    }
    return f;
}

inline PairSpecFile load_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Schema, "cannot open input file " + path.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::Schema, "schema: malformed JSON: " + std::string(e.what()));
    }
    try {
        return parse_spec(j, path.parent_path());
    } catch (const Json::exception& e) {
        fail(ErrorKind::Schema, "schema: " + std::string(e.what()));
    }
}

/// Normalized form: catalog references expanded, defaults made explicit.
inline Json to_json(const PairSpecFile& f) {
    Json j = detail::pair_block_json(f.pair);
    if (f.nu) j["nu"] = {{"multiplicities", *f.nu}};
    if (f.vortex) {
        const auto& v = *f.vortex;
        Json d = Json::array();
        for (const auto& [a, b] : v.divisor) d.push_back({a, b});
        j["vortex"] = {{"N", v.N}, {"modulus", {v.modulus_re, v.modulus_im}}, {"area", v.area},
                       {"tau", v.tau}, {"divisor", d}, {"tolerance", v.tolerance},
                       {"max_iterations", v.max_iterations}};
    }
    if (!f.tunneling.empty()) {
        Json t = Json::array();
        for (const auto& s : f.tunneling)
            t.push_back({{"a", s.a}, {"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"adapted", s.adapted}});
        j["tunneling"] = t;
    }
    if (f.specflow) {
        Json s;
        if (f.specflow->H0) s["H0"] = detail::matrix_json(*f.specflow->H0);
        if (f.specflow->P) s["P"] = detail::matrix_json(*f.specflow->P);
        s["samples"] = f.specflow->samples;
        s["random_count"] = f.specflow->random_count;
        j["specflow"] = s;
    }
    if (f.sum) {
        const auto& s = *f.sum;
        Json g = Json::array();
        for (const auto& e : s.glued)
            g.push_back({{"c1L_1", e.c1L_1}, {"c1L_2", e.c1L_2}, {"euler", e.euler},
                         {"signature", e.signature}, {"c1_square", e.c1_square}});
        Json sj = {{"second", detail::pair_block_json(s.second)}, {"residues", {s.rho1, s.rho2}}};
        if (!s.invariants_csv.empty()) sj["invariants_csv"] = s.invariants_csv;
        if (!s.signs_csv.empty()) sj["signs_csv"] = s.signs_csv;
        sj["glued"] = g;
        j["sum"] = sj;
    }
    return j;
}

inline HomologyClass class_from(const std::vector<Int>& v) {
    IntVector c(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<Eigen::Index>(i)) = v[i];
    return HomologyClass(c);
}

inline ClosedFourManifold build_manifold(const ManifoldSpec& m) {
    const auto n = static_cast<Eigen::Index>(m.gram.size());
    IntMatrix form(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) form(i, k) = m.gram[i][k];
    return ClosedFourManifold(m.name, m.euler, m.signature, m.b_plus, form);
}

inline PairXSigma build_pair(const PairBlock& b) {
    return build_pair(build_manifold(b.manifold), class_from(b.sigma.vector), b.sigma.genus,
                      b.sigma.b_plus_complement);
}

inline LogSpinc build_spinc(const PairXSigma& pair, const PairBlock& b, const SpincSpec& s) {
    const auto rank = pair.manifold().rank();
    auto check_rank = [&](const std::vector<Int>& v, const char* what) {
        require(static_cast<Eigen::Index>(v.size()) == rank, ErrorKind::Schema,
                std::string("schema: ") + what + " has rank " + std::to_string(v.size()) + ", lattice rank is " +
                    std::to_string(rank));
    };
    LogSpinc out;
    if (s.c1L) {
        check_rank(*s.c1L, "c1L");
        out = make_log_spinc(pair, class_from(*s.c1L));
    } else {
        check_rank(*s.twisting, "twisting");
        require(b.manifold.canonical.has_value(), ErrorKind::Schema,
                "schema: a twisting class needs manifold.canonical");
        out = log_spinc_from_twisting(pair, class_from(*b.manifold.canonical), class_from(*s.twisting));
    }
    if (s.m)
        require(*s.m == out.m, ErrorKind::Schema, "schema: stated m disagrees with c1L.Sigma / 2");
    return out;
}

inline VortexProblem build_vortex_problem(const VortexSpec& v) {
    VortexProblem p;
    p.geometry.N = v.N;
    p.geometry.modulus = Complex(v.modulus_re, v.modulus_im);
    p.geometry.area = v.area;
    p.tau = v.tau;
    p.tolerance = v.tolerance;
    p.max_iterations = v.max_iterations;
    for (const auto& [a, b] : v.divisor) p.divisor.push_back({a, b});
    return p;
}

/// Reads side,m,q,value rows into one table per side.
inline std::pair<RelativeInvariantTable, RelativeInvariantTable> load_invariant_tables(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Schema, "cannot open table " + path.string());
    std::pair<RelativeInvariantTable, RelativeInvariantTable> out;
    std::string line;
    std::getline(in, line);
    require(line.rfind("side,m,q,value", 0) == 0, ErrorKind::Schema,
            path.string() + ": expected header side,m,q,value");
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string side, m, q, value;
        if (!std::getline(ss, side, ',') || !std::getline(ss, m, ',') || !std::getline(ss, q, ',') ||
            !std::getline(ss, value))
            fail(ErrorKind::Schema, path.string() + ":" + std::to_string(row) + ": expected 4 columns");
        require(side == "1" || side == "2", ErrorKind::Schema,
                path.string() + ":" + std::to_string(row) + ": side must be 1 or 2");
        try {
            (side == "1" ? out.first : out.second).set(std::stoll(m), q, std::stoll(value));
        } catch (const std::logic_error&) {
            fail(ErrorKind::Schema, path.string() + ":" + std::to_string(row) + ": bad number");
        }
    }
    return out;
}

inline SignTable load_sign_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Schema, "cannot open sign table " + path.string());
    SignTable t;
    std::string line;
    std::getline(in, line);
    require(line.rfind("m1,m2,q,sign", 0) == 0, ErrorKind::Schema, path.string() + ": expected header m1,m2,q,sign");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string m1, m2, q, s;
        std::getline(ss, m1, ',');
        std::getline(ss, m2, ',');
        std::getline(ss, q, ',');
        std::getline(ss, s);
        try {
            t.set(std::stoll(m1), std::stoll(m2), q, std::stoi(s));
        } catch (const std::logic_error&) {
            fail(ErrorKind::Schema, path.string() + ": bad sign row '" + line + "'");
        }
    }
    return t;
}

/// CSV with a header row and LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    template <class... Ts>
    void row(const Ts&... cells) {
        std::vector<std::string> r;
        (r.push_back(cell(cells)), ...);
        require(r.size() == header_.size(), ErrorKind::Internal, "CSV row width mismatch");
        rows_.push_back(std::move(r));
    }

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) out += ',';
                out += escape(r[i]);
            }
            out += '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
        return out;
    }

    std::size_t size() const { return rows_.size(); }

    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(bool b) { return b ? "true" : "false"; }
    static std::string cell(const Rational& r) {
        if (r.denominator() == 1) return std::to_string(r.numerator());
        return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    }
    static std::string cell(double x) {
        std::ostringstream os;
        os << std::setprecision(17) << x;
        return os.str();
    }
    template <class T>
        requires std::is_integral_v<T>
    static std::string cell(T x) { return std::to_string(x); }

private:
    static std::string escape(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    require(EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) == 1, ErrorKind::Internal,
            "SHA-256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

/// Header line then N*N little-endian float64 values, row-major.
inline std::string encode_grid(const Grid& g, const TorusGeometry& geom, const std::string& field_name) {
    std::ostringstream head;
    head << std::setprecision(17) << "relsw-grid N=" << geom.N << " modulus=" << geom.modulus.real() << ","
         << geom.modulus.imag() << " area=" << geom.area << " field=" << field_name
         << " layout=row-major,s1-fastest convention=int(i/2pi)F=-d\n";
    std::string out = head.str();
    const std::size_t offset = out.size();
    out.resize(offset + g.size() * sizeof(double));
    for (std::size_t i = 0; i < g.size(); ++i) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(g[i]);
        for (int b = 0; b < 8; ++b) out[offset + i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
    return out;
}

inline Grid decode_grid(const std::string& bytes, int& N) {
    const auto nl = bytes.find('\n');
    require(nl != std::string::npos, ErrorKind::Schema, "grid file has no header line");
    std::smatch m;
    const std::string head = bytes.substr(0, nl);
    static const std::regex re(R"(N=(\d+))");
    require(std::regex_search(head, m, re), ErrorKind::Schema, "grid header lacks N");
    N = std::stoi(m[1].str());
    const std::size_t count = static_cast<std::size_t>(N) * N;
    require(bytes.size() == nl + 1 + count * 8, ErrorKind::Schema, "grid payload size mismatch");
    Grid g(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[nl + 1 + i * 8 + b])) << (8 * b);
        g[i] = std::bit_cast<double>(bits);
    }
    return g;
}

/// Collects artifacts and writes them together with manifest.csv
/// (file, bytes, sha256).
class ArtifactSink {
public:
    explicit ArtifactSink(std::filesystem::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, std::string bytes) { files_.emplace_back(name, std::move(bytes)); }

    void write() const {
        if (dir_.empty()) return;
        std::filesystem::create_directories(dir_);
        CsvTable manifest({"file", "bytes", "sha256"});
        for (const auto& [name, bytes] : files_) {
            std::ofstream out(dir_ / name, std::ios::binary);
            out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
            require(static_cast<bool>(out), ErrorKind::Internal, "failed writing " + (dir_ / name).string());
            manifest.row(name, bytes.size(), sha256_hex(bytes));
        }
        std::ofstream out(dir_ / "manifest.csv", std::ios::binary);
        out << manifest.str();
    }

    const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

private:
    std::filesystem::path dir_;
    std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace relsw
