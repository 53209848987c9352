#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spa/engine.hpp"
#include "spa/instance.hpp"

namespace spa {

/// Parse or validation failure, tagged with the offending file and line when known.
class IoError : public std::runtime_error {
public:
    IoError(const std::string& source, std::size_t line, const std::string& message);
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text);

/// Comma-separated fields; double quotes protect commas, "" escapes a quote.
/// Unquoted fields are trimmed.
std::vector<std::string> split_csv(const std::string& line);
std::string join_csv(const std::vector<std::string>& fields);

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

/// Nonblank lines not starting with '#'.
std::vector<CsvRecord> read_csv(std::istream& in);

// Taxonomy: one `node,parent` record per topic; the root has an empty parent.
TopicTree read_taxonomy(std::istream& in, const std::string& source = "<taxonomy>");
void write_taxonomy(std::ostream& out, const TopicTree& tree);

// Preferences: `participant-id,topic-1,...,topic-k` in rank order.
std::vector<Participant> read_preferences(std::istream& in, const TopicTree& tree,
                                          const std::string& source = "<preferences>");
void write_preferences(std::ostream& out, const std::vector<Participant>& people, const TopicTree& tree);

// Quotas: `supervisor-id,c_min,c_max`.
struct QuotaRecord {
    std::string supervisor;
    Quota quota;
};
std::vector<QuotaRecord> read_quotas(std::istream& in, const std::string& source = "<quotas>");
void write_quotas(std::ostream& out, const ProblemInstance& instance);

/// Instance document (JSON) naming the taxonomy, preference and quota files (relative
/// paths resolve against the document's directory) plus `weights` and `alpha`.
ProblemInstance load_instance(const std::filesystem::path& path);

/// Writes `<stem>.json` and its four record files into `dir`. Returns the document path.
std::filesystem::path save_instance(const ProblemInstance& instance, const std::filesystem::path& dir,
                                    const std::string& stem = "instance");

/// Solver configuration document (JSON) with keys pop_max, it_max, patience, p_mt, p_sw,
/// alpha, crossover, k_points, ref_x, ref_y, weights, seed. Missing keys keep defaults;
/// unknown keys are rejected.
struct SolverConfig {
    GAConfig ga;
    std::optional<std::vector<double>> weights;

    friend bool operator==(const SolverConfig& a, const SolverConfig& b);
};

SolverConfig read_config(std::istream& in, const std::string& source = "<config>");
SolverConfig load_config(const std::filesystem::path& path);
void write_config(std::ostream& out, const SolverConfig& config);

/// Applies the configuration's weight and alpha overrides to the instance.
ProblemInstance apply_overrides(const ProblemInstance& instance, const SolverConfig& config);

// Matching: `student-id,supervisor-id` per student.
void write_matching(std::ostream& out, const Matching& matching, const ProblemInstance& instance);
Matching read_matching(std::istream& in, const ProblemInstance& instance, const std::string& source = "<matching>");

/// Frontier report: header comments carry the S-metric, reference point and whether the
/// frontier is exact; records are `f_students,f_supervisors,matching-file`.
struct FrontierReport {
    std::vector<ObjectivePair> points;
    std::vector<std::string> matching_files;
    double s_metric = 0.0;
    ReferencePoint ref{};
    bool exact = false;

    friend bool operator==(const FrontierReport&, const FrontierReport&) = default;
};

void write_frontier(std::ostream& out, const FrontierReport& report);
FrontierReport read_frontier(std::istream& in, const std::string& source = "<frontier>");

// Run report: `iteration,s_metric,best_f_students,best_f_supervisors,frontier_size`.
void write_history(std::ostream& out, const std::vector<IterationRecord>& history);
std::vector<IterationRecord> read_history(std::istream& in, const std::string& source = "<report>");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace spa
