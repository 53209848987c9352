#include "spa/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace spa {

using json = nlohmann::json;
namespace fs = std::filesystem;

IoError::IoError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(line ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message) {}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) throw std::invalid_argument("not a number: '" + text + "'");
    return value;
}

namespace {

std::size_t parse_count(const std::string& text) {
    std::size_t value = 0;
    const char* end = text.data() + text.size();
    auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != end)
        throw std::invalid_argument("not a nonnegative integer: '" + text + "'");
    return value;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            quoted = was_quoted = true;
            cur.clear();
        } else if (c == ',') {
            fields.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else if (!(was_quoted && (c == ' ' || c == '\t' || c == '\r'))) {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted field");
    fields.push_back(was_quoted ? cur : trim(cur));
    return fields;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out += ',';
        const auto& f = fields[k];
        const bool needs_quotes = f.find_first_of(",\"#") != std::string::npos || trim(f) != f;
        if (!needs_quotes) {
            out += f;
            continue;
        }
        out += '"';
        for (char c : f) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
    }
    return out;
}

std::vector<CsvRecord> read_csv(std::istream& in) {
    std::vector<CsvRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        records.push_back({lineno, split_csv(line)});
    }
    return records;
}

TopicTree read_taxonomy(std::istream& in, const std::string& source) {
    std::vector<TopicRecord> topics;
    std::vector<std::size_t> lines;
    std::vector<CsvRecord> records;
    try {
        records = read_csv(in);
    } catch (const std::exception& e) {
        throw IoError(source, 0, e.what());
    }
    for (const auto& rec : records) {
        if (rec.fields.size() != 2) throw IoError(source, rec.line, "expected `node,parent`");
        topics.push_back({rec.fields[0], rec.fields[1]});
        lines.push_back(rec.line);
    }
    try {
        return TopicTree::from_records(topics);
    } catch (const TaxonomyError& e) {
        // Attach the line of the first record naming the offending id when it can be found.
        std::size_t line = 0;
        const std::string what = e.what();
        for (std::size_t k = 0; k < topics.size() && !line; ++k)
            if (what.find("'" + topics[k].id + "'") != std::string::npos) line = lines[k];
        throw TaxonomyError(e.kind(), (line ? source + ":" + std::to_string(line) : source) + ": " + what);
    }
}

void write_taxonomy(std::ostream& out, const TopicTree& tree) {
    out << "# node,parent\n";
    for (const auto& rec : tree.records()) out << join_csv({rec.id, rec.parent}) << '\n';
}

std::vector<Participant> read_preferences(std::istream& in, const TopicTree& tree, const std::string& source) {
    std::vector<Participant> people;
    std::vector<CsvRecord> records;
    try {
        records = read_csv(in);
    } catch (const std::exception& e) {
        throw IoError(source, 0, e.what());
    }
    for (const auto& rec : records) {
        if (rec.fields.size() < 2) throw IoError(source, rec.line, "expected `id,topic-1,...,topic-k`");
        std::vector<std::string> ids(rec.fields.begin() + 1, rec.fields.end());
        try {
            people.push_back({rec.fields[0], RankedPreference::from_ids(ids, tree)});
        } catch (const std::exception& e) {
            throw IoError(source, rec.line, e.what());
        }
    }
    return people;
}

void write_preferences(std::ostream& out, const std::vector<Participant>& people, const TopicTree& tree) {
    out << "# id,topic-1,...,topic-k\n";
    for (const auto& p : people) {
        std::vector<std::string> fields{p.id};
        for (TopicIndex t : p.preferences.topics()) fields.push_back(tree.id(t));
        out << join_csv(fields) << '\n';
    }
}

std::vector<QuotaRecord> read_quotas(std::istream& in, const std::string& source) {
    std::vector<QuotaRecord> out;
    std::vector<CsvRecord> records;
    try {
        records = read_csv(in);
    } catch (const std::exception& e) {
        throw IoError(source, 0, e.what());
    }
    for (const auto& rec : records) {
        if (rec.fields.size() != 3) throw IoError(source, rec.line, "expected `supervisor-id,c_min,c_max`");
        try {
            out.push_back({rec.fields[0], {parse_count(rec.fields[1]), parse_count(rec.fields[2])}});
        } catch (const std::exception& e) {
            throw IoError(source, rec.line, e.what());
        }
    }
    return out;
}

void write_quotas(std::ostream& out, const ProblemInstance& instance) {
    out << "# supervisor-id,c_min,c_max\n";
    for (std::size_t j = 0; j < instance.num_supervisors(); ++j)
        out << join_csv({instance.supervisors()[j].id, std::to_string(instance.quota(j).min),
                         std::to_string(instance.quota(j).max)})
            << '\n';
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string(), 0, "cannot write file");
    out << contents;
}

namespace {

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(source, 0, std::string("invalid JSON: ") + e.what());
    }
}

std::vector<double> json_weights(const json& j, const std::string& source) {
    if (!j.is_array()) throw IoError(source, 0, "`weights` must be an array of numbers");
    std::vector<double> w;
    for (const auto& x : j) {
        if (!x.is_number()) throw IoError(source, 0, "`weights` must be an array of numbers");
        w.push_back(x.get<double>());
    }
    return w;
}

template <class F>
auto with_source(const std::string& source, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const IoError&) {
        throw;
    } catch (const TaxonomyError&) {
        throw;
    } catch (const std::exception& e) {
        throw IoError(source, 0, e.what());
    }
}

}  // namespace

ProblemInstance load_instance(const fs::path& path) {
    const std::string source = path.string();
    const json doc = parse_json(read_file(path), source);
    const fs::path base = path.parent_path();
    auto file_of = [&](const char* key) {
        if (!doc.contains(key) || !doc[key].is_string())
            throw IoError(source, 0, std::string("missing string key `") + key + "`");
        const fs::path p = doc[key].get<std::string>();
        return p.is_absolute() ? p : base / p;
    };
    for (const auto& [key, _] : doc.items())
        if (key != "taxonomy" && key != "students" && key != "supervisors" && key != "quotas" && key != "weights" &&
            key != "alpha")
            throw IoError(source, 0, "unknown key `" + key + "`");

    const fs::path tax_path = file_of("taxonomy");
    std::istringstream tax_in(read_file(tax_path));
    auto tree = std::make_shared<const TopicTree>(read_taxonomy(tax_in, tax_path.string()));

    const fs::path stu_path = file_of("students");
    std::istringstream stu_in(read_file(stu_path));
    auto students = read_preferences(stu_in, *tree, stu_path.string());

    const fs::path sup_path = file_of("supervisors");
    std::istringstream sup_in(read_file(sup_path));
    auto supervisors = read_preferences(sup_in, *tree, sup_path.string());

    const fs::path quota_path = file_of("quotas");
    std::istringstream quota_in(read_file(quota_path));
    const auto quota_records = read_quotas(quota_in, quota_path.string());
    std::unordered_map<std::string, Quota> by_id;
    for (const auto& q : quota_records)
        if (!by_id.emplace(q.supervisor, q.quota).second)
            throw IoError(quota_path.string(), 0, "duplicate quota for supervisor '" + q.supervisor + "'");
    std::vector<Quota> quotas;
    for (const auto& s : supervisors) {
        auto it = by_id.find(s.id);
        if (it == by_id.end()) throw IoError(quota_path.string(), 0, "no quota for supervisor '" + s.id + "'");
        quotas.push_back(it->second);
    }
    if (quota_records.size() != supervisors.size())
        throw IoError(quota_path.string(), 0, "quota table lists supervisors absent from the supervisor file");

    if (!doc.contains("weights")) throw IoError(source, 0, "missing key `weights`");
    const auto weights = json_weights(doc["weights"], source);
    if (!doc.contains("alpha") || !doc["alpha"].is_number()) throw IoError(source, 0, "missing numeric key `alpha`");
    const double alpha = doc["alpha"].get<double>();

    return with_source(source, [&] {
        return ProblemInstance(tree, std::move(students), std::move(supervisors), std::move(quotas),
                               RankWeights(weights), alpha);
    });
}

fs::path save_instance(const ProblemInstance& instance, const fs::path& dir, const std::string& stem) {
    fs::create_directories(dir);
    std::ostringstream tax, stu, sup, quo;
    write_taxonomy(tax, instance.tree());
    write_preferences(stu, instance.students(), instance.tree());
    write_preferences(sup, instance.supervisors(), instance.tree());
    write_quotas(quo, instance);
    const std::string tax_name = stem + "_taxonomy.csv";
    const std::string stu_name = stem + "_students.csv";
    const std::string sup_name = stem + "_supervisors.csv";
    const std::string quo_name = stem + "_quotas.csv";
    write_file(dir / tax_name, tax.str());
    write_file(dir / stu_name, stu.str());
    write_file(dir / sup_name, sup.str());
    write_file(dir / quo_name, quo.str());

    json doc;
    doc["taxonomy"] = tax_name;
    doc["students"] = stu_name;
    doc["supervisors"] = sup_name;
    doc["quotas"] = quo_name;
    doc["weights"] = instance.weights().values();
    doc["alpha"] = instance.alpha();
    const fs::path path = dir / (stem + ".json");
    write_file(path, doc.dump(2) + "\n");
    return path;
}

bool operator==(const SolverConfig& a, const SolverConfig& b) {
    const auto& x = a.ga;
    const auto& y = b.ga;
    return x.pop_max == y.pop_max && x.it_max == y.it_max && x.patience == y.patience &&
           x.mutation.p_mt == y.mutation.p_mt && x.mutation.p_sw == y.mutation.p_sw && x.crossover == y.crossover &&
           x.k_points == y.k_points && x.alpha == y.alpha && x.ref == y.ref && x.seed == y.seed &&
           a.weights == b.weights;
}

SolverConfig read_config(std::istream& in, const std::string& source) {
    std::ostringstream ss;
    ss << in.rdbuf();
    const json doc = parse_json(ss.str(), source);
    if (!doc.is_object()) throw IoError(source, 0, "configuration must be a JSON object");
    SolverConfig cfg;
    auto& ga = cfg.ga;
    auto count = [&](const json& v, const std::string& key) {
        if (!v.is_number_unsigned()) throw IoError(source, 0, "`" + key + "` must be a nonnegative integer");
        return v.get<std::size_t>();
    };
    auto real = [&](const json& v, const std::string& key) {
        if (!v.is_number()) throw IoError(source, 0, "`" + key + "` must be a number");
        return v.get<double>();
    };
    for (const auto& [key, v] : doc.items()) {
        if (key == "pop_max") ga.pop_max = count(v, key);
        else if (key == "it_max") ga.it_max = count(v, key);
        else if (key == "patience") ga.patience = count(v, key);
        else if (key == "p_mt") ga.mutation.p_mt = real(v, key);
        else if (key == "p_sw") ga.mutation.p_sw = real(v, key);
        else if (key == "alpha") ga.alpha = real(v, key);
        else if (key == "k_points") ga.k_points = count(v, key);
        else if (key == "ref_x") ga.ref.x = real(v, key);
        else if (key == "ref_y") ga.ref.y = real(v, key);
        else if (key == "seed") ga.seed = count(v, key);
        else if (key == "weights") cfg.weights = json_weights(v, source);
        else if (key == "crossover") {
            if (!v.is_string()) throw IoError(source, 0, "`crossover` must be a string");
            ga.crossover = with_source(source, [&] { return parse_crossover_kind(v.get<std::string>()); });
        } else {
            throw IoError(source, 0, "unknown key `" + key + "`");
        }
    }
    with_source(source, [&] { ga.validate(); });
    return cfg;
}

SolverConfig load_config(const fs::path& path) {
    std::istringstream in(read_file(path));
    return read_config(in, path.string());
}

void write_config(std::ostream& out, const SolverConfig& config) {
    const auto& ga = config.ga;
    json doc;
    doc["pop_max"] = ga.pop_max;
    doc["it_max"] = ga.it_max;
    doc["patience"] = ga.patience;
    doc["p_mt"] = ga.mutation.p_mt;
    doc["p_sw"] = ga.mutation.p_sw;
    if (ga.alpha) doc["alpha"] = *ga.alpha;
    doc["crossover"] = to_string(ga.crossover);
    doc["k_points"] = ga.k_points;
    doc["ref_x"] = ga.ref.x;
    doc["ref_y"] = ga.ref.y;
    doc["seed"] = ga.seed;
    if (config.weights) doc["weights"] = *config.weights;
    out << doc.dump(2) << '\n';
}

ProblemInstance apply_overrides(const ProblemInstance& instance, const SolverConfig& config) {
    const double alpha = config.ga.alpha.value_or(instance.alpha());
    if (!config.weights) return alpha == instance.alpha() ? instance : instance.with_alpha(alpha);
    return ProblemInstance(instance.tree_ptr(), instance.students(), instance.supervisors(), instance.quotas(),
                           RankWeights(*config.weights), alpha);
}

void write_matching(std::ostream& out, const Matching& matching, const ProblemInstance& instance) {
    out << "# student-id,supervisor-id\n";
    for (std::size_t i = 0; i < matching.num_students(); ++i)
        out << join_csv({instance.students()[i].id, instance.supervisors()[matching.supervisor_of(i)].id}) << '\n';
}

Matching read_matching(std::istream& in, const ProblemInstance& instance, const std::string& source) {
    std::unordered_map<std::string, std::size_t> student_ix, supervisor_ix;
    for (std::size_t i = 0; i < instance.num_students(); ++i) student_ix[instance.students()[i].id] = i;
    for (std::size_t j = 0; j < instance.num_supervisors(); ++j) supervisor_ix[instance.supervisors()[j].id] = j;
    std::vector<SupervisorIndex> assignment(instance.num_students(), 0);
    std::vector<char> seen(instance.num_students(), 0);
    for (const auto& rec : read_csv(in)) {
        if (rec.fields.size() != 2) throw IoError(source, rec.line, "expected `student-id,supervisor-id`");
        auto s = student_ix.find(rec.fields[0]);
        if (s == student_ix.end()) throw IoError(source, rec.line, "unknown student '" + rec.fields[0] + "'");
        auto r = supervisor_ix.find(rec.fields[1]);
        if (r == supervisor_ix.end()) throw IoError(source, rec.line, "unknown supervisor '" + rec.fields[1] + "'");
        if (seen[s->second]) throw IoError(source, rec.line, "student '" + rec.fields[0] + "' assigned twice");
        seen[s->second] = 1;
        assignment[s->second] = r->second;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw IoError(source, 0, "student '" + instance.students()[i].id + "' is unassigned");
    return Matching(std::move(assignment), instance.num_supervisors());
}

void write_frontier(std::ostream& out, const FrontierReport& report) {
    out << "# s_metric," << format_double(report.s_metric) << '\n';
    out << "# ref," << format_double(report.ref.x) << ',' << format_double(report.ref.y) << '\n';
    out << "# exact," << (report.exact ? "true" : "false") << '\n';
    out << "# f_students,f_supervisors,matching\n";
    for (std::size_t k = 0; k < report.points.size(); ++k) {
        const std::string file = k < report.matching_files.size() ? report.matching_files[k] : std::string{};
        out << format_double(report.points[k].students) << ',' << format_double(report.points[k].supervisors) << ','
            << join_csv({file}) << '\n';
    }
}

FrontierReport read_frontier(std::istream& in, const std::string& source) {
    FrontierReport report;
    std::string line;
    std::size_t lineno = 0;
    bool have_s = false, have_ref = false, have_exact = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        try {
            if (t.front() == '#') {
                const auto fields = split_csv(trim(t.substr(1)));
                if (fields[0] == "s_metric" && fields.size() == 2) {
                    report.s_metric = parse_double(fields[1]);
                    have_s = true;
                } else if (fields[0] == "ref" && fields.size() == 3) {
                    report.ref = {parse_double(fields[1]), parse_double(fields[2])};
                    have_ref = true;
                } else if (fields[0] == "exact" && fields.size() == 2) {
                    if (fields[1] != "true" && fields[1] != "false") throw std::invalid_argument("bad exact flag");
                    report.exact = fields[1] == "true";
                    have_exact = true;
                }
                continue;
            }
            const auto fields = split_csv(t);
            if (fields.size() != 3) throw std::invalid_argument("expected `f_students,f_supervisors,matching`");
            report.points.push_back({parse_double(fields[0]), parse_double(fields[1])});
            report.matching_files.push_back(fields[2]);
        } catch (const std::invalid_argument& e) {
            throw IoError(source, lineno, e.what());
        }
    }
    if (!have_s || !have_ref || !have_exact) throw IoError(source, 0, "missing s_metric, ref or exact header");
    return report;
}

void write_history(std::ostream& out, const std::vector<IterationRecord>& history) {
    out << "# iteration,s_metric,best_f_students,best_f_supervisors,frontier_size\n";
    for (const auto& r : history)
        out << r.iteration << ',' << format_double(r.s_metric) << ',' << format_double(r.best_students) << ','
            << format_double(r.best_supervisors) << ',' << r.frontier_size << '\n';
}

std::vector<IterationRecord> read_history(std::istream& in, const std::string& source) {
    std::vector<IterationRecord> out;
    for (const auto& rec : read_csv(in)) {
        if (rec.fields.size() != 5) throw IoError(source, rec.line, "expected 5 fields");
        try {
            out.push_back({parse_count(rec.fields[0]), parse_double(rec.fields[1]), parse_double(rec.fields[2]),
                           parse_double(rec.fields[3]), parse_count(rec.fields[4])});
        } catch (const std::invalid_argument& e) {
            throw IoError(source, rec.line, e.what());
        }
    }
    return out;
}

}  // namespace spa
