// Command-line front end: parameter sweeps, figure presets, oracle checks.

#include "hopcoh/sweep.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hopcoh;

std::vector<double> parse_axis_values(const std::string& spec)
{
    // either "lo:hi:n" or a comma-separated list
    if (std::count(spec.begin(), spec.end(), ':') == 2) {
        double lo, hi;
        int n;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) == 3 && n >= 1) {
            if (n == 1) return {lo};
            return linear_axis(lo, hi, std::size_t(n));
        }
        throw CLI::ValidationError("bad axis range: " + spec);
    }
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(std::stod(item));
    return out;
}

std::pair<std::string, std::string> split_kv(const std::string& s)
{
    const auto eq = s.find('=');
    if (eq == std::string::npos)
        throw CLI::ValidationError("expected name=value, got: " + s);
    return {s.substr(0, eq), s.substr(eq + 1)};
}

void apply_key(SweepConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "variant") {
        cfg.variant = variant_from_name(value);
    } else if (key == "mode") {
        if (value != "ground" && value != "thermal")
            throw CLI::ValidationError("mode must be ground or thermal");
        cfg.thermal = value == "thermal";
    } else if (key == "outputs") {
        cfg.outputs.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.outputs.push_back(item);
    } else if (key.rfind("axis.", 0) == 0) {
        const std::string name = key.substr(5);
        cfg.axes.emplace_back(name, parse_axis_values(value));
    } else if (key.rfind("set.", 0) == 0) {
        cfg.fixed[key.substr(4)] = std::stod(value);
    } else {
        throw CLI::ValidationError("unknown config key: " + key);
    }
}

SweepConfig load_config_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw CLI::ValidationError("cannot read config file: " + path);
    SweepConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto [k, v] = split_kv(line);
        apply_key(cfg, k, v);
    }
    return cfg;
}

void dump_config(const SweepConfig& cfg, std::ostream& os)
{
    os << "variant=" << variant_name(cfg.variant) << "\n";
    os << "mode=" << (cfg.thermal ? "thermal" : "ground") << "\n";
    for (const auto& [name, values] : cfg.axes) {
        os << "axis." << name << "=";
        for (std::size_t i = 0; i < values.size(); ++i)
            os << (i ? "," : "") << detail::format_value(values[i]);
        os << "\n";
    }
    for (const auto& [name, value] : cfg.fixed)
        os << "set." << name << "=" << detail::format_value(value) << "\n";
    os << "outputs=";
    for (std::size_t i = 0; i < cfg.outputs.size(); ++i)
        os << (i ? "," : "") << cfg.outputs[i];
    os << "\n";
}

int write_results(const std::vector<SweepResult>& results,
                  const std::string& output, const std::string& format)
{
    const EmitFormat fmt = format == "json" ? EmitFormat::Json : EmitFormat::Csv;
    if (output.empty() || output == "-")
        emit(results, fmt, std::cout);
    else
        emit_to_file(results, fmt, output);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gaussian coherence and entanglement of two ultrastrongly "
                 "coupled bosonic modes"};
    app.require_subcommand(1);

    std::string output, format = "csv", config_path, preset_name;
    unsigned workers = 1;
    std::vector<std::string> overrides;

    auto add_io = [&](CLI::App* sub) {
        sub->add_option("--output,-o", output, "output file ('-' for stdout)");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", workers, "worker thread count");
    };

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("--config", config_path, "flat key=value config file");
    sweep_cmd->add_option("--key,-k", overrides,
                          "config override key=value (repeatable)");
    add_io(sweep_cmd);

    auto* preset_cmd = app.add_subcommand("preset", "run a figure preset");
    preset_cmd->add_option("name", preset_name, "preset name")->required();
    add_io(preset_cmd);

    auto* dump_cmd = app.add_subcommand("dump-config", "print an expanded preset config");
    dump_cmd->add_option("name", preset_name, "preset name")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run Fock-oracle cross checks");
    verify_cmd->add_option("name", preset_name, "verification preset")->required();

    auto* list_cmd = app.add_subcommand("list", "list presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep_cmd->parsed()) {
            SweepConfig cfg = config_path.empty() ? SweepConfig{}
                                                  : load_config_file(config_path);
            if (config_path.empty()) cfg.axes.clear();
            for (const auto& kv : overrides) {
                const auto [k, v] = split_kv(kv);
                apply_key(cfg, k, v);
            }
            if (cfg.axes.empty())
                throw CLI::ValidationError("no axes given (use --key axis.<param>=...)");
            return write_results({run_sweep(cfg, workers)}, output, format);
        }
        if (preset_cmd->parsed()) {
            std::vector<SweepResult> results;
            for (const auto& cfg : hopcoh::preset(preset_name))
                results.push_back(run_sweep(cfg, workers));
            return write_results(results, output, format);
        }
        if (dump_cmd->parsed()) {
            const auto cfgs = hopcoh::preset(preset_name);
            for (std::size_t i = 0; i < cfgs.size(); ++i) {
                if (i) std::cout << "---\n";
                dump_config(cfgs[i], std::cout);
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            const auto rep = hopcoh::verify(preset_name);
            for (const auto& c : rep.checks)
                std::printf("%-28s tol %.3g  deviation %.6g  %s\n", c.name.c_str(),
                            c.tolerance, c.deviation, c.pass ? "PASS" : "FAIL");
            return rep.pass() ? 0 : 1;
        }
        if (list_cmd->parsed()) {
            std::cout << "figure presets:";
            for (const auto& n : hopcoh::preset_names()) std::cout << " " << n;
            std::cout << "\nverify presets:";
            for (const auto& n : hopcoh::verify_names()) std::cout << " " << n;
            std::cout << "\n";
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
