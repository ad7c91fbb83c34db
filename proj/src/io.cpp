#include "symcov/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace symcov {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& token, const std::string& source, std::size_t line_no,
                    std::size_t data_row, const std::string& column) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || token.empty()) {
        std::ostringstream msg;
        msg << source << ":" << line_no << ": data row " << data_row << ", column '"
            << column << "': '" << token << "' is not a number";
        fail(Errc::parse_error, msg.str());
    }
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << source << ":" << line_no << ": data row " << data_row << ", column '"
            << column << "': value " << token << " is not finite";
        fail(Errc::non_finite, msg.str());
    }
    return value;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

struct ColumnRole {
    std::size_t variable = 0;
    enum Kind { Lo, Hi, Mode } kind = Lo;
};

} // namespace

IntervalTable parse_interval_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    std::size_t line_no = 0;

    // header
    if (!std::getline(in, line)) {
        fail(Errc::parse_error, source_name + ": empty file, header row expected");
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line);

    IntervalTable table;
    std::vector<ColumnRole> roles(header.size());
    std::map<std::string, std::size_t> var_index;
    std::vector<bool> has_lo, has_hi;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string& name = header[c];
        std::string base;
        ColumnRole::Kind kind;
        if (ends_with(name, "_lo")) {
            base = name.substr(0, name.size() - 3);
            kind = ColumnRole::Lo;
        } else if (ends_with(name, "_hi")) {
            base = name.substr(0, name.size() - 3);
            kind = ColumnRole::Hi;
        } else if (ends_with(name, "_mode")) {
            base = name.substr(0, name.size() - 5);
            kind = ColumnRole::Mode;
        } else {
            fail(Errc::parse_error, source_name + ":1: header column '" + name +
                                        "' must end in _lo, _hi, or _mode");
        }
        auto [it, inserted] = var_index.emplace(base, table.variables.size());
        if (inserted) {
            table.variables.push_back(base);
            has_lo.push_back(false);
            has_hi.push_back(false);
        }
        roles[c] = {it->second, kind};
        if (kind == ColumnRole::Lo) has_lo[it->second] = true;
        if (kind == ColumnRole::Hi) has_hi[it->second] = true;
    }
    for (std::size_t v = 0; v < table.variables.size(); ++v) {
        if (!has_lo[v] || !has_hi[v]) {
            fail(Errc::parse_error, source_name + ":1: variable '" + table.variables[v] +
                                        "' needs both _lo and _hi columns");
        }
    }

    std::size_t data_row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++data_row;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": data row " << data_row << " has "
                << fields.size() << " fields, header has " << header.size();
            fail(Errc::ragged_rows, msg.str());
        }
        std::vector<double> lo(table.dim()), hi(table.dim());
        std::vector<std::optional<double>> mode(table.dim());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            double value = parse_number(fields[c], source_name, line_no, data_row, header[c]);
            switch (roles[c].kind) {
                case ColumnRole::Lo: lo[roles[c].variable] = value; break;
                case ColumnRole::Hi: hi[roles[c].variable] = value; break;
                case ColumnRole::Mode: mode[roles[c].variable] = value; break;
            }
        }
        std::vector<Interval> row;
        row.reserve(table.dim());
        for (std::size_t v = 0; v < table.dim(); ++v) {
            try {
                row.emplace_back(lo[v], hi[v]);
                if (mode[v] && !row.back().contains(*mode[v])) {
                    fail(Errc::mode_out_of_range, "mode outside its interval");
                }
            } catch (const Error& e) {
                std::ostringstream msg;
                msg << source_name << ":" << line_no << ": data row " << data_row
                    << ", variable '" << table.variables[v] << "': " << e.what();
                fail(e.code(), msg.str());
            }
        }
        table.rows.push_back(std::move(row));
        table.modes.push_back(std::move(mode));
    }
    if (table.rows.empty()) {
        fail(Errc::empty_sample, source_name + ": no data rows");
    }
    return table;
}

IntervalTable read_interval_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    return parse_interval_csv(in, path);
}

void write_interval_csv(std::ostream& out, const IntervalTable& table) {
    bool any_mode = false;
    for (const auto& row : table.modes) {
        for (const auto& m : row) {
            if (m) any_mode = true;
        }
    }
    for (std::size_t v = 0; v < table.dim(); ++v) {
        if (v > 0) out << ',';
        out << table.variables[v] << "_lo," << table.variables[v] << "_hi";
        if (any_mode) out << ',' << table.variables[v] << "_mode";
    }
    out << '\n';
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t v = 0; v < table.dim(); ++v) {
            if (v > 0) out << ',';
            out << format_double(table.rows[i][v].lower()) << ','
                << format_double(table.rows[i][v].upper());
            if (any_mode) {
                out << ',';
                double m = table.modes[i][v] ? *table.modes[i][v] : table.rows[i][v].midpoint();
                out << format_double(m);
            }
        }
        out << '\n';
    }
}

BivariateIntervalSample to_bivariate(const IntervalTable& table) {
    if (table.dim() != 2) {
        std::ostringstream msg;
        msg << "expected exactly 2 variables, file has " << table.dim();
        fail(Errc::invalid_params, msg.str());
    }
    std::vector<BivariateIntervalObs> obs;
    obs.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        obs.emplace_back(table.rows[i][0], table.rows[i][1], table.modes[i][0],
                         table.modes[i][1]);
    }
    return BivariateIntervalSample(std::move(obs));
}

MultivariateIntervalSample to_multivariate(const IntervalTable& table) {
    return MultivariateIntervalSample(table.dim(), table.rows, table.modes);
}

std::string format_double(double value) {
    char buf[40];
    for (int precision : {15, 16, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double back = std::strtod(buf, nullptr);
        if (back == value) break;
    }
    return buf;
}

StudyConfig parse_study_config(std::istream& in, const std::string& source_name) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string text = trim(line);
        if (text.empty()) continue;
        auto eq = text.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": expected 'key = value'";
            fail(Errc::config_error, msg.str());
        }
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": empty key or value";
            fail(Errc::config_error, msg.str());
        }
        if (!kv.emplace(key, value).second) {
            fail(Errc::config_error, source_name + ": duplicate key '" + key + "'");
        }
    }

    auto take = [&kv, &source_name](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            fail(Errc::config_error, source_name + ": missing key '" + key + "'");
        }
        std::string value = it->second;
        kv.erase(it);
        return value;
    };
    auto to_double = [&source_name](const std::string& key, const std::string& value) {
        char* end = nullptr;
        double v = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0') {
            fail(Errc::config_error, source_name + ": key '" + key + "': '" + value +
                                         "' is not a number");
        }
        return v;
    };
    auto to_long = [&](const std::string& key, const std::string& value) {
        double v = to_double(key, value);
        if (v != std::floor(v)) {
            fail(Errc::config_error, source_name + ": key '" + key + "' must be an integer");
        }
        return static_cast<long>(v);
    };

    double mu_x = to_double("mu_x", take("mu_x"));
    double mu_y = to_double("mu_y", take("mu_y"));
    double s2x = to_double("sigma2_x", take("sigma2_x"));
    double s2y = to_double("sigma2_y", take("sigma2_y"));
    double g1 = to_double("gamma1", take("gamma1"));
    double g2 = to_double("gamma2", take("gamma2"));
    double g3 = to_double("gamma3", take("gamma3"));
    int nu = static_cast<int>(to_long("nu", kv.count("nu") ? take("nu") : "12"));

    bool has_rho = kv.count("rho") > 0;
    bool has_sxy = kv.count("sigma_xy") > 0;
    if (has_rho == has_sxy) {
        fail(Errc::config_error, source_name + ": provide exactly one of 'rho' or 'sigma_xy'");
    }

    TauParams params = [&] {
        try {
            if (has_rho) {
                return TauParams(mu_x, mu_y, s2x, s2y, to_double("rho", take("rho")),
                                 g1, g2, g3, nu);
            }
            return TauParams::from_sigma_xy(mu_x, mu_y, s2x, s2y,
                                            to_double("sigma_xy", take("sigma_xy")),
                                            g1, g2, g3, nu);
        } catch (const Error& e) {
            fail(Errc::config_error, source_name + ": " + e.what());
        }
    }();

    StudyConfig config{params, {}, 1, 0, GenerationLevel::Theta};

    std::string sizes = take("sample_sizes");
    std::replace(sizes.begin(), sizes.end(), ',', ' ');
    std::istringstream size_stream(sizes);
    std::string token;
    while (size_stream >> token) {
        config.sample_sizes.push_back(to_long("sample_sizes", token));
    }

    config.replications = to_long("replications", take("replications"));
    config.seed = static_cast<std::uint64_t>(to_long("seed", take("seed")));

    if (kv.count("level")) {
        std::string level = take("level");
        if (level == "theta") {
            config.level = GenerationLevel::Theta;
        } else if (level == "interval") {
            config.level = GenerationLevel::Interval;
        } else {
            fail(Errc::config_error,
                 source_name + ": level must be 'theta' or 'interval', got '" + level + "'");
        }
    }

    if (!kv.empty()) {
        fail(Errc::config_error, source_name + ": unknown key '" + kv.begin()->first + "'");
    }
    config.validate();
    return config;
}

StudyConfig read_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    return parse_study_config(in, path);
}

void write_study_config(std::ostream& out, const StudyConfig& config) {
    out << "mu_x = " << format_double(config.params.mu_x()) << '\n'
        << "mu_y = " << format_double(config.params.mu_y()) << '\n'
        << "sigma2_x = " << format_double(config.params.sigma2_x()) << '\n'
        << "sigma2_y = " << format_double(config.params.sigma2_y()) << '\n'
        << "rho = " << format_double(config.params.rho()) << '\n'
        << "gamma1 = " << format_double(config.params.gamma1()) << '\n'
        << "gamma2 = " << format_double(config.params.gamma2()) << '\n'
        << "gamma3 = " << format_double(config.params.gamma3()) << '\n'
        << "nu = " << config.params.nu() << '\n';
    out << "sample_sizes = ";
    for (std::size_t i = 0; i < config.sample_sizes.size(); ++i) {
        if (i > 0) out << ", ";
        out << config.sample_sizes[i];
    }
    out << '\n'
        << "replications = " << config.replications << '\n'
        << "seed = " << config.seed << '\n'
        << "level = " << (config.level == GenerationLevel::Theta ? "theta" : "interval")
        << '\n';
}

void write_study_csv(std::ostream& out, const StudyReport& report) {
    out << "n,component,name,mean,sd,theoretical\n";
    auto names = g_component_names();
    for (std::size_t si = 0; si < report.sample_sizes.size(); ++si) {
        for (std::size_t c = 0; c < 10; ++c) {
            out << report.sample_sizes[si] << ',' << (c + 1) << ',' << names[c] << ','
                << format_double(report.cells[si][c].mean) << ','
                << format_double(report.cells[si][c].sd) << ','
                << format_double(report.theoretical[c]) << '\n';
        }
    }
}

std::string study_report_json(const StudyReport& report, const StudyConfig& config,
                              const std::string& input_digest) {
    json j;
    j["version"] = kVersion;
    j["input_digest"] = input_digest;
    j["config"] = {
        {"mu_x", config.params.mu_x()},
        {"mu_y", config.params.mu_y()},
        {"sigma2_x", config.params.sigma2_x()},
        {"sigma2_y", config.params.sigma2_y()},
        {"rho", config.params.rho()},
        {"sigma_xy", config.params.sigma_xy()},
        {"gamma1", config.params.gamma1()},
        {"gamma2", config.params.gamma2()},
        {"gamma3", config.params.gamma3()},
        {"nu", config.params.nu()},
        {"sample_sizes", config.sample_sizes},
        {"replications", config.replications},
        {"seed", config.seed},
        {"level", config.level == GenerationLevel::Theta ? "theta" : "interval"},
    };
    j["theoretical"] = report.theoretical;
    auto names = g_component_names();
    json sizes = json::array();
    for (std::size_t si = 0; si < report.sample_sizes.size(); ++si) {
        json cells = json::array();
        for (std::size_t c = 0; c < 10; ++c) {
            cells.push_back({{"component", c + 1},
                             {"name", names[c]},
                             {"mean", report.cells[si][c].mean},
                             {"sd", report.cells[si][c].sd}});
        }
        sizes.push_back({{"n", report.sample_sizes[si]}, {"cells", cells}});
    }
    j["results"] = sizes;
    return j.dump(2);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string digest_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string file_digest_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return digest_hex(buffer.str());
}

namespace {

BivariateIntervalSample make_dataset(std::initializer_list<std::array<double, 4>> rows) {
    // rows are (y_lo, y_hi, x_lo, x_hi)
    std::vector<BivariateIntervalObs> obs;
    for (const auto& r : rows) {
        obs.emplace_back(Interval(r[2], r[3]), Interval(r[0], r[1]));
    }
    return BivariateIntervalSample(std::move(obs));
}

} // namespace

int builtin_dataset_count() noexcept { return 4; }

BivariateIntervalSample builtin_dataset(int index) {
    switch (index) {
        case 1:
            return make_dataset({{6, 7, 1, 4}, {6, 9, 2, 7}, {5, 8, 1, 5}});
        case 2:
            return make_dataset({{6, 12, 3, 7}, {3, 15, 1, 8}, {3, 22, 2, 15}});
        case 3:
            return make_dataset({{3, 4, 5, 9}, {1, 6, 4, 8}, {2, 5, 4, 10}, {2, 4, 3, 7}});
        case 4:
            return make_dataset({{3, 3, 4, 4}, {6, 6, 5, 5}, {5, 5, 3, 3}});
        default:
            fail(Errc::invalid_params, "builtin dataset index must be 1..4");
    }
}

} // namespace symcov
