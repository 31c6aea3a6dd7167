#pragma once

#include "loophom/space_models.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace loophom::cli {

struct RunConfig {
    SpaceTag space = SpaceTag::even_sphere(2);
    int max_total_degree = 30;
    Coefficients coefficients = Coefficients::integers;
    int sign = 1;
    std::string format = "table";  // table | json | diagram
    int page = 2;
    std::string presentation_file;  // candidate literal with `assign <name> <expr>` lines
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

/// Loop-homology E_2 with the installed schedule for cfg.
Page preset_E2(const RunConfig& cfg);
Schedule preset_schedule(const RunConfig& cfg, const Page& e2);

/// Page r of the preset sequence (E_2 turned by the scheduled differentials below r).
Page page_at(const Page& e2, const Schedule& schedule, int r);

/// Candidate literal plus `assign <generator> <E_2 expression>` lines.
std::pair<AlgebraPresentation, std::map<std::string, AlgebraElement>> read_candidate(const std::string& text,
                                                                                    const AlgebraPresentation& e2);

std::string cmd_compute(const RunConfig& cfg, std::vector<CheckResult>& checks);
std::string cmd_verify(const RunConfig& cfg, std::vector<CheckResult>& checks);
std::string cmd_pages(const RunConfig& cfg);
std::string cmd_universal(int n, const std::string& format, bool& consistent);

/// Full command line; returns the exit status (0 iff all checks pass, 1 on a failed check, 2 on errors).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loophom::cli
