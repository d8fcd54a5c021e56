#include <CLI11.hpp>

#include "hillgap/cli.hpp"
#include "hillgap/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hillgap: spectra, gaps and reconstruction for Hill operators "
                 "with singular periodic potentials"};

    std::string config_path, out_dir, method, n_range;
    int cutoff = 0, nodes = 0, jobs = 0;
    double tol = 0;
    app.add_option("--config", config_path, "run configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--method", method, "basic|matrix|shoot|all (overrides config)");
    app.add_option("--n-range", n_range, "A..B (overrides config)");
    app.add_option("--cutoff", cutoff, "Fourier truncation K (overrides config)");
    app.add_option("--nodes", nodes, "quadrature nodes (overrides config)");
    app.add_option("--tol", tol, "tolerance (overrides config)");
    app.add_option("--jobs", jobs, "worker threads for per-n maps (0 = all cores)");

    CLI11_PARSE(app, argc, argv);

    try {
        hillgap::RunConfig cfg = hillgap::config_from_json_file(config_path);
        if (!out_dir.empty()) hillgap::apply_override(cfg, "out", out_dir);
        if (!method.empty()) hillgap::apply_override(cfg, "method", method);
        if (!n_range.empty()) hillgap::apply_override(cfg, "n-range", n_range);
        if (cutoff > 0) hillgap::apply_override(cfg, "cutoff", std::to_string(cutoff));
        if (nodes > 0) hillgap::apply_override(cfg, "nodes", std::to_string(nodes));
        if (tol > 0) hillgap::apply_override(cfg, "tol", std::to_string(tol));
        if (jobs > 0) hillgap::apply_override(cfg, "jobs", std::to_string(jobs));
        return hillgap::run(cfg);
    } catch (const hillgap::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const hillgap::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
}
