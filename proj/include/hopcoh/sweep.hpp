#pragma once

#include "hopcoh/fock_oracle.hpp"
#include "hopcoh/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace hopcoh {

/// One sweep: ordered axes over model/bath parameters, everything else fixed.
/// Recognized parameter names: g, eta_a, T_a, T_b, T (both temperatures),
/// gamma, kappa.
struct SweepConfig {
    Variant variant = Variant::FullHopfield;
    bool thermal = false;
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    std::map<std::string, double> fixed{
        {"g", 0.0}, {"eta_a", 1.0}, {"T_a", 0.0}, {"T_b", 0.0},
        {"gamma", 1e-3}, {"kappa", 1e-3}};
    std::vector<std::string> outputs{"C_a", "C_b", "C_tot", "mu_a", "mu_b",
                                     "v1", "v2", "E_N"};
};

struct SweepRow {
    std::vector<double> params;    // axis values, axis order
    std::vector<double> outputs;   // NaN on error
    bool secular_ok = true;
    std::string error;             // empty on success
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
};

namespace detail {

inline const std::vector<std::string>& known_params()
{
    static const std::vector<std::string> names{
        "g", "eta_a", "T_a", "T_b", "T", "gamma", "kappa"};
    return names;
}

inline void validate_config(const SweepConfig& cfg)
{
    std::vector<std::string> seen;
    for (const auto& [name, values] : cfg.axes) {
        if (std::find(known_params().begin(), known_params().end(), name)
            == known_params().end())
            throw std::invalid_argument("unknown sweep parameter: " + name);
        if (std::find(seen.begin(), seen.end(), name) != seen.end())
            throw std::invalid_argument("duplicate axis: " + name);
        seen.push_back(name);
        if (values.empty())
            throw std::invalid_argument("empty axis: " + name);
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            if (!(values[i] < values[i + 1]))
                throw std::invalid_argument("axis not strictly increasing: " + name);
        for (double v : values)
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite axis value: " + name);
    }
}

inline double extract_output(const CoherenceReport& r, const std::string& name)
{
    if (name == "C_a") return r.c_a;
    if (name == "C_b") return r.c_b;
    if (name == "C_tot") return r.c_tot;
    if (name == "mu_a") return r.mu_a;
    if (name == "mu_b") return r.mu_b;
    if (name == "v1") return r.v1;
    if (name == "v2") return r.v2;
    if (name == "E_N") return r.log_neg;
    if (name == "S_rho") return entropy_kernel(r.v1) + entropy_kernel(r.v2);
    if (name == "S_th")
        return entropy_kernel(r.mu_a + 0.5) + entropy_kernel(r.mu_b + 0.5);
    throw std::invalid_argument("unknown output column: " + name);
}

} // namespace detail

/// Evaluates every grid point; per-point failures become error rows.
inline SweepResult run_sweep(const SweepConfig& cfg, unsigned workers = 1)
{
    detail::validate_config(cfg);

    std::vector<std::size_t> shape;
    std::size_t total = 1;
    for (const auto& [name, values] : cfg.axes) {
        shape.push_back(values.size());
        total *= values.size();
    }

    SweepResult result;
    result.config = cfg;
    result.rows.resize(total);

    auto evaluate = [&](std::size_t flat) {
        SweepRow row;
        std::map<std::string, double> vals = cfg.fixed;
        std::size_t rem = flat;
        // lexicographic order: last axis fastest
        std::vector<std::size_t> idx(shape.size());
        for (std::size_t k = shape.size(); k-- > 0;) {
            idx[k] = rem % shape[k];
            rem /= shape[k];
        }
        for (std::size_t k = 0; k < cfg.axes.size(); ++k) {
            const double v = cfg.axes[k].second[idx[k]];
            row.params.push_back(v);
            vals[cfg.axes[k].first] = v;
        }
        if (vals.count("T")) {
            vals["T_a"] = vals["T_b"] = vals["T"];
        }
        try {
            ModelParams mp;
            mp.omega_a = vals.at("eta_a");
            mp.omega_b = 1.0;
            mp.g = vals.at("g");
            mp.variant = cfg.variant;
            if (mp.variant == Variant::Dicke && mp.g >= mp.critical_coupling())
                throw std::domain_error("beyond critical coupling");
            std::optional<BathSpec> bath;
            if (cfg.thermal)
                bath = BathSpec{vals.at("gamma"), vals.at("kappa"),
                                vals.at("T_a"), vals.at("T_b")};
            const CoherenceReport rep = coherence_report(mp, bath);
            for (const auto& name : cfg.outputs)
                row.outputs.push_back(detail::extract_output(rep, name));
            row.secular_ok = rep.secular_ok;
        } catch (const std::exception& e) {
            row.outputs.assign(cfg.outputs.size(),
                               std::numeric_limits<double>::quiet_NaN());
            row.secular_ok = false;
            std::string what = e.what();
            if (what.find("critical") != std::string::npos)
                row.error = "beyond-critical";
            else if (what.find("degenerate") != std::string::npos)
                row.error = "degenerate-polaritons";
            else if (what.find("unstable") != std::string::npos)
                row.error = "unstable";
            else if (what.find("undamped") != std::string::npos)
                row.error = "undamped-mode";
            else
                row.error = "error";
        }
        result.rows[flat] = std::move(row);
    };

    workers = std::max(1u, workers);
    if (workers == 1 || total < 2) {
        for (std::size_t i = 0; i < total; ++i) evaluate(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mtx;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i;
                    {
                        std::lock_guard lock(mtx);
                        if (next >= total) return;
                        i = next++;
                    }
                    evaluate(i);
                }
            });
        for (auto& th : pool) th.join();
    }
    return result;
}

namespace detail {

inline std::string format_value(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

/// Column names: variant, axis parameters in axis order, outputs, secular_ok,
/// error.
inline std::vector<std::string> column_names(const SweepConfig& cfg)
{
    std::vector<std::string> cols{"variant"};
    for (const auto& [name, values] : cfg.axes) cols.push_back(name);
    for (const auto& name : cfg.outputs) cols.push_back(name);
    cols.push_back("secular_ok");
    cols.push_back("error");
    return cols;
}

enum class EmitFormat { Csv, Json };

inline void emit(const std::vector<SweepResult>& results, EmitFormat fmt,
                 std::ostream& os)
{
    if (results.empty() || results.front().rows.empty())
        throw std::invalid_argument("nothing to emit");
    const auto cols = column_names(results.front().config);
    for (const auto& r : results)
        if (column_names(r.config) != cols)
            throw std::invalid_argument("mismatched column sets");

    if (fmt == EmitFormat::Csv) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            os << (i ? "," : "") << cols[i];
        os << "\n";
        for (const auto& res : results)
            for (const auto& row : res.rows) {
                os << variant_name(res.config.variant);
                for (double v : row.params) os << "," << detail::format_value(v);
                for (double v : row.outputs) os << "," << detail::format_value(v);
                os << "," << (row.secular_ok ? 1 : 0) << "," << row.error << "\n";
            }
    } else {
        os << "[";
        bool first = true;
        for (const auto& res : results)
            for (const auto& row : res.rows) {
                os << (first ? "" : ",") << "\n  {";
                first = false;
                os << "\"variant\":\"" << variant_name(res.config.variant) << "\"";
                std::size_t c = 1;
                for (double v : row.params)
                    os << ",\"" << cols[c++] << "\":" << detail::format_value(v);
                for (double v : row.outputs) {
                    os << ",\"" << cols[c++] << "\":";
                    if (std::isnan(v)) os << "null";
                    else os << detail::format_value(v);
                }
                os << ",\"secular_ok\":" << (row.secular_ok ? "true" : "false");
                os << ",\"error\":\"" << row.error << "\"}";
            }
        os << "\n]\n";
    }
}

inline void emit_to_file(const std::vector<SweepResult>& results, EmitFormat fmt,
                         const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open output file: " + path);
    emit(results, fmt, os);
    if (!os)
        throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// figure presets

inline std::vector<double> linear_axis(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

/// Named figure-reproduction presets. Grid densities (201-point axes, 41x41
/// maps) are reproduction choices documented in the README.
inline std::vector<SweepConfig> preset(const std::string& name)
{
    auto base = [](Variant v, bool thermal) {
        SweepConfig c;
        c.variant = v;
        c.thermal = thermal;
        return c;
    };
    const std::vector<double> g_grid = linear_axis(0.0, 3.0, 201);
    const std::vector<double> t_grid = linear_axis(0.01, 2.0, 201);
    const std::vector<double> eta_small{0.2, 1.0, 5.0};
    const std::vector<double> eta_wide{0.2, 0.5, 1.0, 5.0, 10.0};
    const std::vector<double> g_few{0.01, 0.05, 0.1, 0.5, 1.0, 2.0};

    if (name == "fig2") {
        auto a = base(Variant::FullHopfield, false);
        a.axes = {{"eta_a", eta_small}, {"g", g_grid}};
        auto b = base(Variant::FullHopfield, false);
        b.axes = {{"g", g_few}, {"eta_a", linear_axis(0.2, 10.0, 201)}};
        return {a, b};
    }
    if (name == "fig3") {
        std::vector<SweepConfig> out;
        for (Variant v : {Variant::FullHopfield, Variant::NoAnti, Variant::NoRes}) {
            auto c = base(v, false);
            c.axes = {{"g", g_grid}};
            out.push_back(c);
        }
        return out;
    }
    if (name == "fig4") {
        std::vector<SweepConfig> out;
        for (Variant v : {Variant::SPlusSqueeze, Variant::SPlusPhase}) {
            auto c = base(v, true);
            c.axes = {{"g", g_grid}};
            c.fixed["T_a"] = c.fixed["T_b"] = 1.0;
            out.push_back(c);
        }
        return out;
    }
    if (name == "fig5") {
        auto c = base(Variant::FullHopfield, true);
        c.axes = {{"eta_a", eta_small}, {"g", g_grid}};
        c.fixed["T_a"] = c.fixed["T_b"] = 1.0;
        c.outputs = {"v1", "v2", "mu_a", "mu_b", "S_rho", "S_th"};
        return {c};
    }
    if (name == "fig6") {
        auto a = base(Variant::FullHopfield, true);
        a.axes = {{"eta_a", eta_wide}, {"T", t_grid}};
        a.fixed["g"] = 2.0;
        auto b = base(Variant::FullHopfield, true);
        b.axes = {{"g", g_few}, {"T", t_grid}};
        return {a, b};
    }
    if (name == "fig7" || name == "fig8") {
        auto c = base(name == "fig7" ? Variant::NoAnti : Variant::NoRes, true);
        c.axes = {{"g", {0.1, 0.5, 1.0, 2.0}}, {"T", t_grid}};
        return {c};
    }
    if (name == "fig9") {
        auto a = base(Variant::FullHopfield, true);
        a.axes = {{"T_a", linear_axis(0.01, 2.0, 41)},
                  {"T_b", linear_axis(0.01, 2.0, 41)}};
        a.fixed["g"] = 1.0;
        auto b = base(Variant::FullHopfield, true);
        std::vector<double> gammas;
        for (int k = 0; k <= 40; ++k)
            gammas.push_back(std::pow(10.0, -5.0 + 4.0 * k / 40.0));
        b.axes = {{"T_a", linear_axis(0.01, 2.0, 41)}, {"gamma", gammas}};
        b.fixed["g"] = 1.0;
        return {a, b};
    }
    if (name == "figA1") {
        auto a = base(Variant::Dicke, false);
        a.axes = {{"g", linear_axis(0.0, 0.4995, 201)}};
        auto b = base(Variant::Dicke, true);
        b.axes = {{"g", linear_axis(0.0, 0.4995, 201)}};
        b.fixed["T_a"] = b.fixed["T_b"] = 1.0;
        return {a, b};
    }
    if (name == "figA2") {
        std::vector<SweepConfig> out;
        for (Variant v : {Variant::FullHopfield, Variant::NoAnti, Variant::NoRes}) {
            auto c = base(v, false);
            c.axes = {{"g", g_grid}};
            c.outputs = {"E_N"};
            out.push_back(c);
        }
        auto c = base(Variant::FullHopfield, true);
        c.axes = {{"T", t_grid}};
        c.fixed["g"] = 0.1;
        c.outputs = {"E_N"};
        out.push_back(c);
        return out;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{
        "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9",
        "figA1", "figA2"};
    return names;
}

// ---------------------------------------------------------------------------
// oracle verification presets

struct VerifyCheck {
    std::string name;
    double tolerance = 0.0;
    double deviation = 0.0;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool pass() const
    {
        return std::all_of(checks.begin(), checks.end(),
                           [](const VerifyCheck& c) { return c.pass; });
    }
};

/// Fock-oracle cross checks; presets: ground-point, thermal-point,
/// no-anti-zero.
inline VerifyReport verify(const std::string& preset_name)
{
    VerifyReport rep;
    auto add = [&](const std::string& n, double tol, double dev) {
        rep.checks.push_back({n, tol, dev, dev < tol});
    };
    if (preset_name == "ground-point") {
        ModelParams p{1.0, 1.0, 1.0, Variant::FullHopfield};
        const auto oracle = fock::ground_state(p);
        const auto gaussian = ground_state_covariance(p);
        const auto [mu_a, mu_b] = mean_occupations(gaussian);
        const auto [omu_a, omu_b] = mean_occupations(
            CovarianceState{oracle.covariance, CovBasis::Bare});
        add("mu_a vs oracle", 1e-3, std::abs(mu_a - omu_a));
        add("mu_b vs oracle", 1e-3, std::abs(mu_b - omu_b));
        add("covariance entrywise", 1e-3,
            (gaussian.sigma - oracle.covariance).cwiseAbs().maxCoeff());
        add("log-negativity", 1e-3,
            std::abs(log_negativity(gaussian) - fock::negativity(oracle)));
    } else if (preset_name == "thermal-point") {
        ModelParams p{1.0, 1.0, 0.3, Variant::FullHopfield};
        BathSpec bath{1e-3, 1e-3, 1.0, 1.0};
        const auto oracle = fock::lindblad_steady_state(p, bath);
        const auto gaussian = thermal_bare_covariance(p, bath);
        add("covariance entrywise", 1e-2,
            (gaussian.sigma - oracle.covariance).cwiseAbs().maxCoeff());
    } else if (preset_name == "no-anti-zero") {
        double worst = 0.0;
        for (double g : linear_axis(0.0, 3.0, 61)) {
            ModelParams p{1.0, 1.0, g, Variant::NoAnti};
            const auto r = coherence_report(p);
            worst = std::max({worst, r.c_a, r.c_b, r.c_tot});
        }
        add("max ground coherence", 1e-12, worst);
    } else {
        throw std::invalid_argument("unknown verify preset: " + preset_name);
    }
    return rep;
}

inline const std::vector<std::string>& verify_names()
{
    static const std::vector<std::string> names{
        "ground-point", "thermal-point", "no-anti-zero"};
    return names;
}

} // namespace hopcoh
