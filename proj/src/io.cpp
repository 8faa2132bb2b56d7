#include "schedsim/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace schedsim::io {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        fields.push_back(trimmed(field));
    }
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

double parse_double(const std::string& text, const std::string& where) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(where + ": expected a number, got '" + text + "'");
    }
    return value;
}

long parse_long(const std::string& text, const std::string& where) {
    long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(where + ": expected an integer, got '" + text + "'");
    }
    return value;
}

std::string location(const std::filesystem::path& path, std::size_t line_no) {
    return path.string() + ":" + std::to_string(line_no);
}

}  // namespace

Workload load_workload_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || split_csv_line(lines[0]) !=
                             std::vector<std::string>{"task_id", "length_mi"}) {
        throw ConfigError(path.string() + ": expected header 'task_id,length_mi'");
    }
    std::vector<Task> tasks;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trimmed(lines[i]).empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 2) {
            throw ConfigError(location(path, i + 1) + ": expected 2 fields");
        }
        Task t;
        t.id = static_cast<int>(parse_long(fields[0], location(path, i + 1)));
        t.length_mi = parse_double(fields[1], location(path, i + 1));
        tasks.push_back(t);
    }
    std::sort(tasks.begin(), tasks.end(),
              [](const Task& a, const Task& b) { return a.id < b.id; });
    Workload workload{std::move(tasks)};
    try {
        validate(workload);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return workload;
}

ResourcePool load_pool_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() ||
        split_csv_line(lines[0]) !=
            std::vector<std::string>{"vm_id", "mips", "available"}) {
        throw ConfigError(path.string() + ": expected header 'vm_id,mips,available'");
    }
    std::vector<Resource> resources;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trimmed(lines[i]).empty()) continue;
        const auto fields = split_csv_line(lines[i]);
        if (fields.size() != 3) {
            throw ConfigError(location(path, i + 1) + ": expected 3 fields");
        }
        Resource r;
        r.id = static_cast<int>(parse_long(fields[0], location(path, i + 1)));
        r.mips = parse_double(fields[1], location(path, i + 1));
        const long avail = parse_long(fields[2], location(path, i + 1));
        if (avail != 0 && avail != 1) {
            throw ConfigError(location(path, i + 1) + ": available must be 0 or 1");
        }
        r.available = avail == 1;
        resources.push_back(r);
    }
    std::sort(resources.begin(), resources.end(),
              [](const Resource& a, const Resource& b) { return a.id < b.id; });
    ResourcePool pool{std::move(resources)};
    try {
        validate(pool);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return pool;
}

aco::TspInstance load_tsp_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    std::vector<std::string> content;
    for (const auto& line : lines) {
        if (!trimmed(line).empty()) content.push_back(line);
    }
    if (content.empty()) {
        throw ConfigError(path.string() + ": empty instance file");
    }

    aco::TspInstance inst;
    if (split_csv_line(content[0]) == std::vector<std::string>{"i", "j", "distance"}) {
        // Edge list. Size is one past the largest city index.
        struct Edge {
            int i, j;
            double d;
        };
        std::vector<Edge> edges;
        int n = 0;
        for (std::size_t l = 1; l < content.size(); ++l) {
            const auto fields = split_csv_line(content[l]);
            if (fields.size() != 3) {
                throw ConfigError(location(path, l + 1) + ": expected 3 fields");
            }
            Edge e;
            e.i = static_cast<int>(parse_long(fields[0], location(path, l + 1)));
            e.j = static_cast<int>(parse_long(fields[1], location(path, l + 1)));
            e.d = parse_double(fields[2], location(path, l + 1));
            if (e.i < 0 || e.j < 0) {
                throw ConfigError(location(path, l + 1) + ": negative city index");
            }
            n = std::max({n, e.i + 1, e.j + 1});
            edges.push_back(e);
        }
        inst.n = n;
        inst.dist.assign(n, std::vector<double>(n, 0.0));
        std::vector<std::vector<char>> seen(n, std::vector<char>(n, 0));
        for (const Edge& e : edges) {
            if (seen[e.i][e.j] && inst.dist[e.i][e.j] != e.d) {
                throw ConfigError(path.string() + ": conflicting distances for edge " +
                                  std::to_string(e.i) + "," + std::to_string(e.j));
            }
            inst.dist[e.i][e.j] = inst.dist[e.j][e.i] = e.d;
            seen[e.i][e.j] = seen[e.j][e.i] = 1;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (!seen[i][j]) {
                    throw ConfigError(path.string() + ": missing edge " +
                                      std::to_string(i) + "," + std::to_string(j));
                }
            }
        }
    } else {
        // Full distance matrix, one row per line.
        for (std::size_t l = 0; l < content.size(); ++l) {
            const auto fields = split_csv_line(content[l]);
            std::vector<double> row;
            row.reserve(fields.size());
            for (const auto& f : fields) {
                row.push_back(parse_double(f, location(path, l + 1)));
            }
            inst.dist.push_back(std::move(row));
        }
        inst.n = static_cast<int>(inst.dist.size());
    }

    try {
        aco::validate(inst);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return inst;
}

}  // namespace schedsim::io
