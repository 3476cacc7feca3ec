#include "mtfp/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace mtfp::io {

namespace {

struct Row {
    std::size_t line;
    std::vector<long long> cells;
};

struct Section {
    std::size_t line = 0; // where the key appeared
    std::string scalar;
    std::vector<Row> rows;
};

const std::vector<std::string> kScalarKeys = {"name", "individuals", "departments", "groups"};
const std::vector<std::string> kGridKeys = {"department_of", "requirements", "sociometric"};

bool is_one_of(const std::string& key, const std::vector<std::string>& keys) {
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<long long> parse_cells(const std::string& text, std::size_t line) {
    std::vector<long long> cells;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\t' && text[end] != ',') ++end;
        const std::string token = text.substr(pos, end - pos);
        long long value = 0;
        const char* first = token.data();
        if (!token.empty() && token.front() == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw ParseError(line, "'" + token + "' is not an integer");
        cells.push_back(value);
        pos = end;
    }
    return cells;
}

std::size_t parse_count(const Section& s, const std::string& key) {
    const auto cells = parse_cells(s.scalar, s.line);
    if (cells.size() != 1 || cells.front() < 1)
        throw ParseError(s.line, key + " must be a single positive integer");
    return static_cast<std::size_t>(cells.front());
}

// Checks row lengths of a grid section and returns the cells row-major.
std::vector<long long> grid_cells(const Section& s, const std::string& key, std::size_t rows, std::size_t cols) {
    if (s.rows.size() != rows) {
        std::ostringstream os;
        os << key << " has " << s.rows.size() << " rows, expected " << rows;
        throw ParseError(s.line, os.str());
    }
    std::vector<long long> out;
    out.reserve(rows * cols);
    for (const auto& row : s.rows) {
        if (row.cells.size() != cols) {
            std::ostringstream os;
            os << key << " row has " << row.cells.size() << " entries, expected " << cols;
            throw ParseError(row.line, os.str());
        }
        out.insert(out.end(), row.cells.begin(), row.cells.end());
    }
    return out;
}

std::string default_name(const GeneratorConfig& c) {
    std::ostringstream os;
    os << "random n_i=" << c.individuals << " n_j=" << c.departments << " n_k=" << c.groups << std::fixed
       << std::setprecision(2) << " p+=" << c.positive_rate << " p-=" << c.negative_rate << " seed=" << c.seed;
    return os.str();
}

} // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

ProblemInstance load_instance(std::istream& source) {
    std::map<std::string, Section> sections;
    Section* current = nullptr;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(source, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        const auto colon = line.find(':');
        if (colon != std::string::npos) {
            const std::string key = trim(line.substr(0, colon));
            const std::string rest = trim(line.substr(colon + 1));
            if (!is_one_of(key, kScalarKeys) && !is_one_of(key, kGridKeys))
                throw ParseError(line_no, "unknown key '" + key + "'");
            if (sections.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
            Section& s = sections[key];
            s.line = line_no;
            if (is_one_of(key, kScalarKeys)) {
                s.scalar = rest;
                current = nullptr;
            } else {
                current = &s;
                if (!rest.empty()) s.rows.push_back({line_no, parse_cells(rest, line_no)});
            }
            continue;
        }
        if (current == nullptr) throw ParseError(line_no, "data outside of a grid section");
        current->rows.push_back({line_no, parse_cells(line, line_no)});
    }
    if (source.bad()) throw ParseError(0, "read failure");

    for (const auto& keys : {kScalarKeys, kGridKeys})
        for (const auto& key : keys)
            if (!sections.count(key)) throw ParseError(0, "missing key '" + key + "'");

    ProblemInstance instance;
    instance.name = sections["name"].scalar;
    const std::size_t n = parse_count(sections["individuals"], "individuals");
    const std::size_t n_j = parse_count(sections["departments"], "departments");
    const std::size_t n_k = parse_count(sections["groups"], "groups");

    const Section& dept_section = sections["department_of"];
    std::vector<long long> labels;
    for (const auto& row : dept_section.rows) labels.insert(labels.end(), row.cells.begin(), row.cells.end());
    if (labels.size() != n) {
        std::ostringstream os;
        os << "department_of has " << labels.size() << " entries, expected " << n;
        throw ParseError(dept_section.line, os.str());
    }
    for (long long label : labels) {
        if (label < 1) throw ParseError(dept_section.line, "department labels start at 1, got " + std::to_string(label));
        instance.depts.dept_of.push_back(static_cast<std::size_t>(label - 1));
    }

    const auto req = grid_cells(sections["requirements"], "requirements", n_j, n_k);
    instance.req = RequirementMatrix(n_j, n_k, std::vector<std::int64_t>(req.begin(), req.end()));

    const auto socio = grid_cells(sections["sociometric"], "sociometric", n, n);
    std::vector<int> socio_cells;
    socio_cells.reserve(socio.size());
    for (long long v : socio) {
        // Anything outside int range is clamped to an equally invalid value for the validator to report.
        socio_cells.push_back(static_cast<int>(std::clamp<long long>(v, -1000, 1000)));
    }
    instance.socio = SociometricMatrix(n, std::move(socio_cells));

    require_valid(instance);
    return instance;
}

ProblemInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_instance(in);
}

void save_instance(const ProblemInstance& instance, std::ostream& sink) {
    if (instance.name.find_first_of("\r\n") != std::string::npos) throw InvalidInput("instance names must fit on one line");
    require_valid(instance);
    const std::size_t n = instance.individuals();
    sink << "# MTFP instance\n";
    sink << "name: " << instance.name << "\n";
    sink << "individuals: " << n << "\n";
    sink << "departments: " << instance.departments() << "\n";
    sink << "groups: " << instance.groups() << "\n";
    sink << "department_of:\n";
    for (std::size_t i = 0; i < n; ++i) sink << (i ? " " : "") << instance.depts.dept_of[i] + 1;
    sink << "\nrequirements:\n";
    for (std::size_t j = 0; j < instance.departments(); ++j) {
        for (std::size_t k = 0; k < instance.groups(); ++k) sink << (k ? " " : "") << instance.req(j, k);
        sink << "\n";
    }
    sink << "sociometric:\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) sink << (j ? " " : "") << std::setw(2) << instance.socio(i, j);
        sink << "\n";
    }
    if (!sink) throw std::runtime_error("failed to write instance document");
}

void save_instance_file(const ProblemInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_instance(instance, out);
    out.flush();
    if (!out) throw std::runtime_error("failed to write '" + path + "'");
}

std::string to_document(const ProblemInstance& instance) {
    std::ostringstream os;
    save_instance(instance, os);
    return os.str();
}

void check_config(const GeneratorConfig& config) {
    if (config.individuals < 1 || config.departments < 1 || config.groups < 1)
        throw InvalidInput("individuals, departments and groups must be positive");
    if (config.individuals < std::max(config.departments, config.groups))
        throw InvalidInput("need at least as many individuals as departments and as groups");
    const double p = config.positive_rate;
    const double m = config.negative_rate;
    if (!(p >= 0.0 && p <= 1.0) || !(m >= 0.0 && m <= 1.0) || p + m > 1.0)
        throw InvalidInput("entry rates must lie in [0, 1] and sum to at most 1");
}

ProblemInstance generate_instance(const GeneratorConfig& config, Rng& rng) {
    check_config(config);
    const std::size_t n = config.individuals;
    const std::size_t n_j = config.departments;
    const std::size_t n_k = config.groups;

    ProblemInstance instance;
    instance.name = config.name.empty() ? default_name(config) : config.name;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    instance.socio = SociometricMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double u = unit(rng);
            instance.socio(i, j) = u < config.positive_rate ? 1 : (u < config.positive_rate + config.negative_rate ? -1 : 0);
        }
    }

    // Cover every row and column once, then scatter the remaining people uniformly.
    instance.req = RequirementMatrix(n_j, n_k);
    std::vector<std::size_t> rows(n_j), cols(n_k);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    std::shuffle(rows.begin(), rows.end(), rng);
    std::shuffle(cols.begin(), cols.end(), rng);
    const std::size_t cover = std::max(n_j, n_k);
    for (std::size_t t = 0; t < cover; ++t) ++instance.req(rows[t % n_j], cols[t % n_k]);
    std::uniform_int_distribution<std::size_t> row_pick(0, n_j - 1), col_pick(0, n_k - 1);
    for (std::size_t t = cover; t < n; ++t) {
        const std::size_t j = row_pick(rng);
        ++instance.req(j, col_pick(rng));
    }

    for (std::size_t j = 0; j < n_j; ++j)
        instance.depts.dept_of.insert(instance.depts.dept_of.end(), static_cast<std::size_t>(instance.req.row_sum(j)), j);
    return instance;
}

ProblemInstance generate_instance(const GeneratorConfig& config) {
    Rng rng(config.seed);
    return generate_instance(config, rng);
}

} // namespace mtfp::io
