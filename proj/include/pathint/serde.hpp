#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathint/measure.hpp"
#include "pathint/oracle.hpp"
#include "pathint/pipeline.hpp"
#include "pathint/qae.hpp"
#include "pathint/truncate.hpp"

namespace pathint {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::json;

// ---- spectrum ----------------------------------------------------------

inline json to_json(const EigenSpectrum& spec) {
    if (spec.kind() == SpectrumKind::Wiener) return json{{"kind", "wiener"}};
    return json{{"kind", "power_law"}, {"a", spec.a()}, {"k", spec.k()}};
}

inline EigenSpectrum spectrum_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "wiener") return EigenSpectrum::wiener();
    if (kind == "power_law")
        return EigenSpectrum::power_law(j.at("a").get<double>(), j.at("k").get<double>());
    throw std::invalid_argument("spectrum: unknown kind '" + kind + "'");
}

// ---- smoothness class --------------------------------------------------

inline json to_json(const SmoothnessClass& cls) {
    return json{{"r", cls.r}, {"K", cls.K}};
}

inline SmoothnessClass class_from_json(const json& j) {
    return SmoothnessClass(j.at("r").get<int>(), j.at("K").get<std::vector<double>>());
}

// ---- integrand ---------------------------------------------------------

inline json to_json(const Integrand& f) {
    switch (f.kind()) {
    case IntegrandKind::Constant:
        return json{{"kind", "constant"}, {"c", f.evaluate({})}};
    case IntegrandKind::Linear:
        return json{{"kind", "linear"}, {"w", f.weights()}};
    case IntegrandKind::CosineLinear: {
        if (f.is_path_average())
            return json{{"kind", "cosine_path_average"}, {"amplitude", f.amplitude()}};
        json out{{"kind", "cosine_linear"}, {"w", f.weights()}, {"amplitude", f.amplitude()}};
        out["K0"] = f.K0();
        out["K1"] = f.K1();
        if (auto k2 = f.K2()) out["K2"] = *k2;
        return out;
    }
    case IntegrandKind::Custom:
        throw std::invalid_argument("integrand: custom functions are not serializable");
    }
    throw std::logic_error("integrand: unknown kind");
}

/// K0/K1/K2 entries on analytic kinds are informational (the values are
/// derived from the coefficients) and are accepted but not trusted.
inline Integrand integrand_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") return Integrand::constant(j.at("c").get<double>());
    if (kind == "linear") return Integrand::linear(j.at("w").get<std::vector<double>>());
    if (kind == "cosine_linear")
        return Integrand::cosine_linear(j.at("w").get<std::vector<double>>(),
                                        j.value("amplitude", 1.0));
    if (kind == "cosine_path_average")
        return Integrand::cosine_path_average(j.value("amplitude", 1.0));
    throw std::invalid_argument("integrand: unknown kind '" + kind + "'");
}

// ---- method ------------------------------------------------------------

inline std::string method_name(Method m) {
    switch (m) {
    case Method::WorstCaseClassical: return "worst_case_classical";
    case Method::MonteCarlo: return "monte_carlo";
    case Method::QuantumStatevector: return "quantum_statevector";
    case Method::QuantumAnalytic: return "quantum_analytic";
    }
    throw std::logic_error("method: unknown value");
}

inline Method method_from_name(const std::string& name) {
    if (name == "worst_case_classical") return Method::WorstCaseClassical;
    if (name == "monte_carlo") return Method::MonteCarlo;
    if (name == "quantum_statevector") return Method::QuantumStatevector;
    if (name == "quantum_analytic") return Method::QuantumAnalytic;
    throw std::invalid_argument("method: unknown name '" + name + "'");
}

// ---- results -----------------------------------------------------------

inline json to_json(const PointCount& n) {
    json out{{"log10", n.log10_value}, {"digits", n.digits()}};
    if (n.exact) out["exact"] = *n.exact;
    return out;
}

inline json to_json(const QaeResult& r) {
    return json{{"schema_version", kSchemaVersion},
                {"estimate", r.estimate},
                {"queries", r.queries},
                {"qubits", r.qubits},
                {"outcomes", r.outcomes},
                {"amplitude_estimates", r.amplitude_estimates},
                {"M", r.M},
                {"repetitions", r.repetitions},
                {"mode", r.mode == QaeMode::Statevector ? "statevector" : "analytic"},
                {"seed", r.seed},
                {"delta", r.delta},
                {"query_convention", QaeResult::kQueryConvention}};
}

/// Timing is noise between otherwise identical runs; callers wanting
/// byte-stable output leave include_timing off.
inline json to_json(const PipelineReport& r, bool include_timing = false) {
    json out{{"schema_version", kSchemaVersion},
             {"method", method_name(r.method)},
             {"eps", r.eps},
             {"splits", {r.splits.trunc, r.splits.grid, r.splits.sum}},
             {"estimate", r.estimate},
             {"d", r.d},
             {"m", r.m},
             {"n", to_json(r.n)},
             {"queries", r.queries},
             {"qubits", r.qubits},
             {"seed", r.seed},
             {"repetitions", r.repetitions}};
    if (r.predicted) {
        out["predicted"] = json{{"d_up", r.predicted->d_up},
                                {"queries", r.predicted->queries},
                                {"qubits", r.predicted->qubits}};
    }
    if (r.exact_value) out["exact_value"] = *r.exact_value;
    if (r.observed_error) out["observed_error"] = *r.observed_error;
    if (include_timing) out["timing_ms"] = r.timing_ms;
    return out;
}

// ---- pipeline job ------------------------------------------------------

/// A full pipeline request: problem (spectrum, class, integrand) plus run
/// configuration, as carried by the `integrate` config file.
struct PipelineJob {
    EigenSpectrum spec;
    SmoothnessClass cls;
    Integrand integrand;
    PipelineConfig config;
};

inline PipelineJob job_from_json(const json& j) {
    if (j.contains("schema_version") && j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::invalid_argument("config: unsupported schema_version");
    PipelineConfig config;
    config.eps = j.at("eps").get<double>();
    if (j.contains("splits")) {
        const auto s = j.at("splits").get<std::vector<double>>();
        if (s.size() != 3)
            throw std::invalid_argument("config: splits must have three entries");
        config.splits = ErrorSplits{s[0], s[1], s[2]};
    }
    config.method = method_from_name(j.value("method", std::string("quantum_analytic")));
    config.repetitions = j.value("repetitions", 1);
    config.seed = j.value("seed", std::uint64_t{0});
    config.enumeration_cap = j.value("enumeration_cap", kDefaultEnumerationCap);
    config.memory_cap_bytes = j.value("memory_cap_bytes", std::uint64_t{2} << 30);
    return PipelineJob{spectrum_from_json(j.at("spectrum")), class_from_json(j.at("class")),
                       integrand_from_json(j.at("integrand")), config};
}

inline json to_json(const PipelineJob& job) {
    json out{{"schema_version", kSchemaVersion},
             {"spectrum", to_json(job.spec)},
             {"class", to_json(job.cls)},
             {"integrand", to_json(job.integrand)},
             {"eps", job.config.eps},
             {"method", method_name(job.config.method)},
             {"repetitions", job.config.repetitions},
             {"seed", job.config.seed},
             {"enumeration_cap", job.config.enumeration_cap},
             {"memory_cap_bytes", job.config.memory_cap_bytes}};
    if (job.config.splits)
        out["splits"] = {job.config.splits->trunc, job.config.splits->grid,
                         job.config.splits->sum};
    return out;
}

} // namespace pathint
