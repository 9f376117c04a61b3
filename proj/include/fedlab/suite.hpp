#ifndef FEDLAB_SUITE_HPP
#define FEDLAB_SUITE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <fedlab/fedosov.hpp>
#include <fedlab/report.hpp>

namespace fedlab
{

/// Bad user configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
    std::string geometry = "cp1-fs";
    /// zero | ricci | canonical | bt | path to a component file
    std::string alpha = "bt";
    int order = 6;
    std::vector<int> levels{1, 2, 3};
    std::vector<std::string> suites;
    std::string f = "mu3";
    std::string g = "mu3";
    std::string f0 = "mu3";
    std::string c = "0";
    bool force = false;
    std::string field = "all";
    int asymptotic_terms = 1;
    int threads = 1;
};

/// "1..10", "8,16,32" or a mix; must be strictly increasing.
std::vector<int> parse_levels(const std::string &text);
/// Thread cap from FEDOSOV_LAB_THREADS (defaults to 1, never below 1).
int thread_cap_from_env();

/// Known suite names in canonical order.
const std::vector<std::string> &suite_names();

/// Validates the config (throws ConfigError before any computation) and runs the requested suites.
Report run_suite(const SuiteConfig &cfg);

/// Connection from a textual alpha choice (zero, ricci, canonical, bt, or a file of components).
FedosovConnection make_connection(const GeometryPtr &g, const std::string &alpha, int order);
/// Parser symbols: mu1..mu3 (su(2) moment maps) on cp1-fs.
std::map<std::string, ChartFunction> standard_symbols(const KahlerGeometry &g);
ChartFunction parse_in(const KahlerGeometry &g, const std::string &text);
/// Fields by name: rot1..rot3 on cp1-fs; rot on flat(1), plus the dilation control when named.
std::vector<std::pair<std::string, VectorField>> named_fields(const KahlerGeometry &g, const std::string &which);

} // namespace fedlab

#endif
