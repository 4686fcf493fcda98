#include "qent/state_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qent/errors.hpp"

namespace qent {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw FormatError("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t positive_dim(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 64)
        throw FormatError(std::string(what) + " must be an integer in [1, 64]");
    return j.get<std::size_t>();
}

BipartiteDims dims_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw FormatError("\"dims\" must be [m, n]");
    return BipartiteDims(positive_dim(j[0], "dims[0]"), positive_dim(j[1], "dims[1]"));
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw FormatError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string dims_label(const BipartiteDims& d) {
    return d.m() == d.n() ? std::to_string(d.m()) : std::to_string(d.m()) + "x" + std::to_string(d.n());
}

}  // namespace

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

StateInput state_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw FormatError("\"kind\" must be a string");
    const std::string k = kind.get<std::string>();

    if (k == "schmidt") {
        const SchmidtForm form = schmidt_from_json(j);
        return from_schmidt(form, BipartiteDims(form.d(), form.d()));
    }

    const BipartiteDims dims = dims_from_json(field(j, "dims"));
    const json& data = field(j, "data");
    if (!data.is_array()) throw FormatError("\"data\" must be an array");
    const std::size_t total = dims.total();

    if (k == "pure") {
        if (data.size() != total) throw FormatError("pure \"data\" must hold m*n amplitudes");
        std::vector<Complex> amps;
        amps.reserve(total);
        for (const auto& z : data) amps.push_back(complex_from_json(z));
        return PureState(dims, std::move(amps));
    }
    if (k == "mixed") {
        if (data.size() != total) throw FormatError("mixed \"data\" must have m*n rows");
        ComplexMatrix m(total, total);
        for (std::size_t r = 0; r < total; ++r) {
            if (!data[r].is_array() || data[r].size() != total) throw FormatError("mixed \"data\" rows must have m*n entries");
            for (std::size_t c = 0; c < total; ++c) m(r, c) = complex_from_json(data[r][c]);
        }
        return DensityMatrix(dims, std::move(m));
    }
    throw FormatError("unknown state kind \"" + k + "\"");
}

StateInput read_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    return state_from_json(j);
}

json state_to_json(const PureState& psi) {
    json data = json::array();
    for (const auto& z : psi.amplitudes()) data.push_back(complex_to_json(z));
    return {{"kind", "pure"}, {"dims", {psi.dims().m(), psi.dims().n()}}, {"data", std::move(data)}};
}

json state_to_json(const DensityMatrix& rho) {
    const auto& m = rho.matrix();
    json data = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        data.push_back(std::move(row));
    }
    return {{"kind", "mixed"}, {"dims", {rho.dims().m(), rho.dims().n()}}, {"data", std::move(data)}};
}

json schmidt_to_json(const SchmidtForm& k) {
    return {{"kind", "schmidt"}, {"d", k.d()}, {"k", std::vector<double>(k.k().begin(), k.k().end())}};
}

SchmidtForm schmidt_from_json(const json& j) {
    const std::size_t d = positive_dim(field(j, "d"), "\"d\"");
    const json& k = field(j, "k");
    if (!k.is_array() || k.size() != d) throw FormatError("\"k\" must hold d coefficients");
    std::vector<double> v;
    for (const auto& x : k) {
        if (!x.is_number()) throw FormatError("\"k\" entries must be numbers");
        v.push_back(x.get<double>());
    }
    return SchmidtForm(std::move(v));
}

json report_to_json(const MeasureReport& r) {
    json j;
    j["kind"] = r.schmidt ? "pure" : "mixed";
    j["dims"] = {r.dims.m(), r.dims.n()};
    j["d"] = r.dims.d();
    j["schmidt"] = r.schmidt ? json(std::vector<double>(r.schmidt->k().begin(), r.schmidt->k().end())) : json(nullptr);
    j["concurrence"] = optional_number(r.concurrence);
    j["negativity"] = r.negativity_trace_norm;
    j["negativity_trace_norm"] = r.negativity_trace_norm;
    j["negativity_rescaled"] = optional_number(r.negativity_rescaled);
    j["x_expectations"] = r.schmidt ? json(r.x_expectations) : json(nullptr);
    j["invariants"] = r.invariants ? json(r.invariants->e) : json(nullptr);
    j["chen_gap"] = optional_number(r.chen_gap);
    j["qutrit_residual"] = optional_number(r.qutrit_residual);
    j["quadrit_residual_corrected"] = optional_number(r.quadrit_residual_corrected);
    j["quadrit_residual_printed"] = optional_number(r.quadrit_residual_printed);
    j["ppt_class"] = r.peres.cls == PeresClass::NPT ? "NPT" : "PPT";
    j["negative_eigenvalues"] = r.peres.negative_eigenvalues;
    return j;
}

std::string report_to_csv(const MeasureReport& r) {
    std::ostringstream out;
    out << "field,value\n";
    auto row = [&](const std::string& name, const std::string& value) { out << name << ',' << value << '\n'; };
    auto opt = [&](const std::string& name, const std::optional<double>& v) {
        row(name, v ? format_real(*v) : std::string());
    };
    auto list = [&](const std::string& name, const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) row(name + "[" + std::to_string(i) + "]", format_real(v[i]));
    };
    row("kind", r.schmidt ? "pure" : "mixed");
    row("dims", std::to_string(r.dims.m()) + "x" + std::to_string(r.dims.n()));
    row("d", std::to_string(r.dims.d()));
    if (r.schmidt) list("schmidt", {r.schmidt->k().begin(), r.schmidt->k().end()});
    opt("concurrence", r.concurrence);
    row("negativity", format_real(r.negativity_trace_norm));
    row("negativity_trace_norm", format_real(r.negativity_trace_norm));
    opt("negativity_rescaled", r.negativity_rescaled);
    list("x_expectations", r.x_expectations);
    if (r.invariants) list("invariants", r.invariants->e);
    opt("chen_gap", r.chen_gap);
    opt("qutrit_residual", r.qutrit_residual);
    opt("quadrit_residual_corrected", r.quadrit_residual_corrected);
    opt("quadrit_residual_printed", r.quadrit_residual_printed);
    row("ppt_class", r.peres.cls == PeresClass::NPT ? "NPT" : "PPT");
    list("negative_eigenvalues", r.peres.negative_eigenvalues);
    return out.str();
}

json sample_to_json(const Sample& s) {
    json j = std::visit(
        [](const auto& state) -> json {
            using T = std::decay_t<decltype(state)>;
            if constexpr (std::is_same_v<T, SchmidtForm>)
                return schmidt_to_json(state);
            else
                return state_to_json(state);
        },
        s.state);
    j["seed"] = s.seed;
    j["witness"] = s.witness;
    return j;
}

Sample sample_from_json(const json& j) {
    const json& kind = field(j, "kind");
    const std::uint64_t seed = field(j, "seed").get<std::uint64_t>();
    const bool witness = field(j, "witness").get<bool>();
    if (kind == "schmidt") return {schmidt_from_json(j), seed, witness};
    StateInput state = state_from_json(j);
    if (auto* psi = std::get_if<PureState>(&state)) return {std::move(*psi), seed, witness};
    return {std::get<DensityMatrix>(std::move(state)), seed, witness};
}

json verify_to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        const CheckInfo& info = check_info(c.id);
        checks.push_back({
            {"check", std::string(info.name)},
            {"dims", {c.dims.m(), c.dims.n()}},
            {"d", c.dims.d()},
            {"kind", info.kind == ResidualKind::Identity ? "identity" : "bound"},
            {"samples", c.samples},
            {"witnesses", c.witness_count},
            {"max_residual", std::isfinite(c.worst_residual) ? json(c.worst_residual) : json(nullptr)},
            {"tolerance", c.tolerance},
            {"pass", c.pass},
            {"worst_case", c.worst_case ? sample_to_json(*c.worst_case) : json(nullptr)},
        });
    }
    return {{"campaign_id", r.campaign_id}, {"master_seed", r.master_seed}, {"pass", r.all_pass()},
            {"checks", std::move(checks)}};
}

std::string verify_to_csv(const VerifyReport& r) {
    std::ostringstream out;
    out << "check,d,samples,max_residual,tolerance,pass\n";
    for (const auto& c : r.checks)
        out << check_info(c.id).name << ',' << dims_label(c.dims) << ',' << c.samples << ','
            << format_real(c.worst_residual) << ',' << format_real(c.tolerance) << ',' << (c.pass ? "true" : "false")
            << '\n';
    return out.str();
}

json roof_to_json(const RoofResult& r, RoofMeasure measure, std::optional<double> oracle) {
    json members = json::array();
    for (const auto& m : r.ensemble.members) {
        json amps = json::array();
        for (const auto& z : m.psi.amplitudes()) amps.push_back(complex_to_json(z));
        members.push_back({{"p", m.p}, {"psi", std::move(amps)}});
    }
    json j{{"measure", measure == RoofMeasure::Concurrence ? "concurrence" : "negativity"},
           {"value", r.value},
           {"converged", r.converged},
           {"restarts_used", r.restarts_used},
           {"ensemble", std::move(members)}};
    if (oracle) {
        j["oracle"] = *oracle;
        j["oracle_gap"] = std::abs(r.value - *oracle);
    }
    return j;
}

}  // namespace qent
