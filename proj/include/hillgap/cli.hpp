#ifndef HILLGAP_CLI_HPP
#define HILLGAP_CLI_HPP

#include <optional>
#include <string>
#include <vector>

namespace hillgap {

enum class Command { Spectrum, Gaps, Reconstruct, Riesz, Perturb, Weights };
enum class Method { Basic, Matrix, Shoot, All };

/// Batch run configuration; file schema and flag overrides in the README.
struct RunConfig {
    Command command = Command::Spectrum;
    std::string potential_json; // inline JSON text
    std::string weight_json;    // inline JSON text, may be empty
    int n_lo = 1, n_hi = 8;
    int K = 64;
    Method method = Method::All;
    std::string out_dir = ".";
    long long seed = 1;
    int nodes = 64;
    double tol = 1e-9;
    int jobs = 0; // 0 = all cores
    int N = 4;      // reconstruct head size
    int n_max = 10; // reconstruct tail cutoff
    std::string bc = "per";
    std::vector<double> vk; // perturb cosine coefficients
};

/// Exit codes: 0 ok, 2 config error, 3 invariant violation, 4 compute failure.
int run(const RunConfig& config);

RunConfig config_from_json_file(const std::string& path);
/// Applies command-line style overrides onto a parsed config.
void apply_override(RunConfig& c, const std::string& key, const std::string& value);

std::string config_hash(const RunConfig& c);

} // namespace hillgap

#endif
