#include "pasv/model_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pasv {

using nlohmann::json;

namespace {

RealMatrix matrix_from_json(const json& j, const std::string& field) {
    if (!j.is_array())
        throw std::invalid_argument("model: field '" + field + "' must be an array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index       cols = 0;
    if (rows > 0) {
        if (!j[0].is_array())
            throw std::invalid_argument("model: field '" + field + "' rows must be arrays");
        cols = static_cast<Eigen::Index>(j[0].size());
    }
    RealMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw std::invalid_argument("model: field '" + field + "' row " +
                                        std::to_string(i) + " has inconsistent length");
        for (Eigen::Index k = 0; k < cols; ++k)
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return m;
}

json matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> vector_from_json(const json& j, const std::string& field) {
    if (!j.is_array())
        throw std::invalid_argument("model: field '" + field + "' must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

Realization ModelFile::realize() const {
    switch (kind) {
        case Kind::ss: return Realization(A, B, C, D);
        case Kind::tf: return from_tf(num, den);
        case Kind::tfm: return from_rational_matrix(entries);
    }
    throw std::logic_error("ModelFile: unknown kind");
}

ModelFile ModelFile::from_realization(const Realization& r, std::string name) {
    ModelFile m;
    m.kind = Kind::ss;
    m.name = std::move(name);
    m.A = r.A;
    m.B = r.B;
    m.C = r.C;
    m.D = r.D;
    return m;
}

ModelFile parse_model(const std::string& json_text) {
    json j = json::parse(json_text); // parse_error carries byte position
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("model: top-level object with a 'kind' field expected");
    ModelFile   m;
    m.name = j.value("name", std::string{});
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ss") {
        m.kind = ModelFile::Kind::ss;
        m.A = matrix_from_json(j.at("A"), "A");
        m.B = matrix_from_json(j.at("B"), "B");
        m.C = matrix_from_json(j.at("C"), "C");
        m.D = matrix_from_json(j.at("D"), "D");
    } else if (kind == "tf") {
        m.kind = ModelFile::Kind::tf;
        m.num = vector_from_json(j.at("num"), "num");
        m.den = vector_from_json(j.at("den"), "den");
    } else if (kind == "tfm") {
        m.kind = ModelFile::Kind::tfm;
        const json& grid = j.at("entries");
        if (!grid.is_array())
            throw std::invalid_argument("model: field 'entries' must be an array of rows");
        for (const auto& row : grid) {
            std::vector<RationalEntry> out_row;
            for (const auto& cell : row) {
                RationalEntry e;
                e.num = vector_from_json(cell.at("num"), "entries.num");
                e.den = vector_from_json(cell.at("den"), "entries.den");
                out_row.push_back(std::move(e));
            }
            m.entries.push_back(std::move(out_row));
        }
    } else {
        throw std::invalid_argument("model: unknown kind '" + kind + "'");
    }
    m.realize(); // dimension validation
    return m;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string model_to_json(const ModelFile& m) {
    json j;
    if (!m.name.empty()) j["name"] = m.name;
    switch (m.kind) {
        case ModelFile::Kind::ss:
            j["kind"] = "ss";
            j["A"] = matrix_to_json(m.A);
            j["B"] = matrix_to_json(m.B);
            j["C"] = matrix_to_json(m.C);
            j["D"] = matrix_to_json(m.D);
            break;
        case ModelFile::Kind::tf:
            j["kind"] = "tf";
            j["num"] = m.num;
            j["den"] = m.den;
            break;
        case ModelFile::Kind::tfm: {
            j["kind"] = "tfm";
            json grid = json::array();
            for (const auto& row : m.entries) {
                json jrow = json::array();
                for (const auto& e : row) jrow.push_back(json{{"num", e.num}, {"den", e.den}});
                grid.push_back(std::move(jrow));
            }
            j["entries"] = std::move(grid);
            break;
        }
    }
    return j.dump(2) + "\n";
}

void save_model(const ModelFile& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << model_to_json(m);
}

std::string passivation_report_json(const PassivationResult& r) {
    json j;
    j["method"] = to_string(r.method);
    j["param"]  = r.param;
    j["nu"]     = r.nu;
    j["alpha"]  = r.alpha;
    j["achieved_delta_minus"] = r.achieved_delta_minus;
    j["states"]               = r.states;
    j["denominator_degree"]   = r.denominator_degree;
    j["pole_estimate"]        = r.pole_estimate;
    j["sweep_error"]          = r.sweep_error;
    j["relative_error_max"]   = r.relative_error_max;
    j["relative_error_mean"]  = r.relative_error_mean;
    j["delta_certificate_ok"] = r.delta_certificate_ok;
    j["sweep_certificate_ok"] = r.sweep_certificate_ok;
    return j.dump(2) + "\n";
}

std::string passivation_report_json(const PassivationResult& r,
                                    const ReduceReport& reduce_report, int reduced_states) {
    json j = json::parse(passivation_report_json(r));
    j["reduce"] = json{{"states", reduced_states},
                       {"discarded_sum", reduce_report.discarded_sum},
                       {"grid_error", reduce_report.grid_error},
                       {"rolled_back", reduce_report.rolled_back}};
    return j.dump(2) + "\n";
}

std::string dissipation_report_json(const DissipationReport& r) {
    json j;
    j["delta_minus"]          = r.delta_minus;
    j["delta_plus"]           = r.delta_plus;
    j["bracket_low"]          = r.bracket_low;
    j["bracket_high"]         = r.bracket_high;
    j["bisection_iterations"] = r.bisection_iterations;
    j["tolerance"]            = r.tolerance;
    j["classification"]       = to_string(r.classification);
    return j.dump(2) + "\n";
}

std::string approximant_json(const RampApproximant& f) {
    json j;
    j["linear_slope"]  = f.linear_slope;
    j["linear_offset"] = f.linear_offset;
    json cplx = json::array();
    for (const auto& t : f.complex_terms)
        cplx.push_back(json{{"pole", {t.pole.real(), t.pole.imag()}},
                            {"residue", {t.residue.real(), t.residue.imag()}}});
    j["complex_terms"] = std::move(cplx);
    json real = json::array();
    for (const auto& t : f.real_terms)
        real.push_back(json{{"pole", t.pole}, {"residue", t.residue}});
    j["real_terms"] = std::move(real);
    j["alpha"]      = f.alpha;
    j["interval"]   = {-f.interval_a, f.interval_b};
    j["denominator_degree"] = f.denominator_degree();
    return j.dump(2) + "\n";
}

void write_sweep_csv(std::ostream& os, const Realization& r, const FrequencyGrid& grid) {
    const Eigen::Index p = r.ports();
    os << "omega";
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            os << ",re_" << (i + 1) << (j + 1) << ",im_" << (i + 1) << (j + 1);
    os << ",lambda_min\n";
    for (double w : grid.omega) {
        ComplexMatrix v;
        try {
            v = eval(r, Complex(0.0, w));
        } catch (const std::exception& e) {
            os << "# omega=" << format_number(w) << " skipped: " << e.what() << "\n";
            continue;
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(v + v.adjoint().eval());
        os << format_number(w);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j)
                os << "," << format_number(v(i, j).real()) << ","
                   << format_number(v(i, j).imag());
        os << "," << format_number(es.eigenvalues().minCoeff()) << "\n";
    }
}

void write_compare_csv(std::ostream& os, const Realization& h, const Realization& g,
                       const FrequencyGrid& grid) {
    if (h.ports() != g.ports())
        throw std::invalid_argument("compare: port dimensions differ");
    os << "omega,relerr\n";
    for (double w : grid.omega) {
        ComplexMatrix hv, gv;
        try {
            hv = eval(h, Complex(0.0, w));
            gv = eval(g, Complex(0.0, w));
        } catch (const std::exception& e) {
            os << "# omega=" << format_number(w) << " skipped: " << e.what() << "\n";
            continue;
        }
        const double hn = spectral_norm(hv);
        const double rel = hn > 0.0 ? spectral_norm(ComplexMatrix(gv - hv)) / hn : 0.0;
        os << format_number(w) << "," << format_number(rel) << "\n";
    }
}

} // namespace pasv
