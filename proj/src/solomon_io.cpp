#include "rwpso/solomon_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rwpso {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.emplace_back(line.substr(start, i - start));
    }
    return out;
}

bool parse_number(const std::string& tok, double& out) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

bool line_has_word(const std::vector<std::string>& toks, std::string_view word) {
    for (const auto& t : toks)
        if (t == word) return true;
    return false;
}

// Integral values print without a decimal point so serialized files look like
// the originals; fractional values keep full precision.
std::string number_text(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string fixed2(double v) {
    // round-half-up at two decimals, display only
    const double scaled = v * 100.0;
    const double rounded = std::floor(scaled + 0.5) / 100.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", rounded);
    return buf;
}

}  // namespace

RawInstanceFile parse_instance(std::string_view text) {
    RawInstanceFile raw;

    std::vector<std::pair<int, std::string>> lines;  // (line number, text)
    {
        int lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            if (nl == std::string_view::npos) nl = text.size();
            ++lineno;
            std::string_view line = text.substr(pos, nl - pos);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (!tokenize(line).empty()) lines.emplace_back(lineno, std::string(line));
            pos = nl + 1;
            if (nl == text.size()) break;
        }
    }

    std::size_t i = 0;
    if (i >= lines.size())
        throw ParseError(ParseError::Kind::malformed_header, "empty document");
    raw.name = tokenize(lines[i].second)[0];
    ++i;

    // VEHICLE section: a NUMBER/CAPACITY header line followed by one data line
    // with two numbers.
    bool have_vehicle = false;
    for (; i < lines.size(); ++i) {
        auto toks = tokenize(lines[i].second);
        if (line_has_word(toks, "CUSTOMER") || line_has_word(toks, "CUSTOMERS")) break;
        if (toks.size() == 2) {
            double a = 0.0, b = 0.0;
            if (parse_number(toks[0], a) && parse_number(toks[1], b)) {
                raw.vehicle_count_declared = static_cast<int>(a);
                raw.capacity = b;
                have_vehicle = true;
                ++i;
                break;
            }
        }
    }
    if (!have_vehicle)
        throw ParseError(ParseError::Kind::malformed_header,
                         raw.name + ": missing NUMBER/CAPACITY line");

    // Skip ahead to the first all-numeric row; everything between is the
    // CUSTOMER header and its column captions.
    for (; i < lines.size(); ++i) {
        auto toks = tokenize(lines[i].second);
        double probe = 0.0;
        if (!toks.empty() && parse_number(toks[0], probe)) break;
    }

    for (; i < lines.size(); ++i) {
        const auto& [lineno, line] = lines[i];
        auto toks = tokenize(line);
        CustomerRow row;
        double fields[7];
        bool numeric = toks.size() == 7;
        for (std::size_t f = 0; numeric && f < 7; ++f)
            numeric = parse_number(toks[f], fields[f]);
        if (!numeric)
            throw ParseError(ParseError::Kind::malformed_row,
                             raw.name + " line " + std::to_string(lineno) +
                                 ": expected 7 numeric fields");
        row.id = static_cast<int>(fields[0]);
        row.x = fields[1];
        row.y = fields[2];
        row.demand = fields[3];
        row.ready = fields[4];
        row.due = fields[5];
        row.service = fields[6];
        raw.rows.push_back(row);
    }

    if (raw.rows.empty())
        throw ParseError(ParseError::Kind::malformed_header,
                         raw.name + ": no customer rows");
    for (std::size_t k = 0; k < raw.rows.size(); ++k) {
        if (raw.rows[k].id != static_cast<int>(k))
            throw ParseError(ParseError::Kind::non_contiguous_ids,
                             raw.name + ": row ids must be consecutive from 0, got " +
                                 std::to_string(raw.rows[k].id) + " at position " +
                                 std::to_string(k));
    }
    return raw;
}

RawInstanceFile parse_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

RawInstanceFile truncate(const RawInstanceFile& raw, int n) {
    const int customers = static_cast<int>(raw.rows.size()) - 1;
    if (n < 1 || n > customers)
        throw std::out_of_range("truncation count " + std::to_string(n) +
                                " outside [1, " + std::to_string(customers) + "]");
    RawInstanceFile out;
    out.name = raw.name + "." + std::to_string(n);
    out.vehicle_count_declared = raw.vehicle_count_declared;
    out.capacity = raw.capacity;
    out.rows.assign(raw.rows.begin(), raw.rows.begin() + 1 + n);
    return out;
}

std::string format_instance(const RawInstanceFile& raw) {
    std::ostringstream os;
    os << raw.name << "\n\n";
    os << "VEHICLE\n";
    os << "NUMBER     CAPACITY\n";
    os << "  " << raw.vehicle_count_declared << "         "
       << number_text(raw.capacity) << "\n\n";
    os << "CUSTOMER\n";
    os << "CUST NO.  XCOORD.   YCOORD.    DEMAND   READY TIME  DUE DATE   "
          "SERVICE   TIME\n\n";
    for (const CustomerRow& r : raw.rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%5d %10s %10s %10s %10s %10s %10s\n", r.id,
                      number_text(r.x).c_str(), number_text(r.y).c_str(),
                      number_text(r.demand).c_str(), number_text(r.ready).c_str(),
                      number_text(r.due).c_str(), number_text(r.service).c_str());
        os << buf;
    }
    return os.str();
}

Instance build_instance(const RawInstanceFile& raw) {
    if (raw.rows.empty())
        throw InstanceError(raw.name + ": no depot row");
    const CustomerRow& depot = raw.rows[0];
    if (depot.demand != 0.0)
        throw InstanceError(raw.name + ": depot demand must be 0");

    std::vector<Customer> customers;
    customers.reserve(raw.rows.size() - 1);
    for (std::size_t k = 1; k < raw.rows.size(); ++k) {
        const CustomerRow& r = raw.rows[k];
        Customer c;
        c.id = r.id;
        c.x = r.x;
        c.y = r.y;
        c.demand = r.demand;
        c.ready = r.ready;
        c.due = r.due;
        c.service = r.service;
        customers.push_back(c);
    }
    return Instance(raw.name, raw.capacity, depot.ready, depot.due, depot.x, depot.y,
                    std::move(customers), std::nullopt, 1.0,
                    raw.vehicle_count_declared);
}

std::string write_solution(const RoutePlan& plan) {
    nlohmann::json routes = nlohmann::json::array();
    for (const Route& r : plan.routes) {
        nlohmann::json stops = nlohmann::json::array();
        for (std::size_t k = 0; k < r.stops.size(); ++k)
            stops.push_back({{"id", r.stops[k]}, {"begin", r.schedule[k].begin}});
        routes.push_back(std::move(stops));
    }
    nlohmann::json doc;
    doc["nv"] = plan.nv;
    doc["td"] = plan.td;
    doc["routes"] = std::move(routes);
    return doc.dump(2) + "\n";
}

std::vector<std::vector<int>> read_solution(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ParseError::Kind::malformed_solution,
                         std::string("solution dump is not valid JSON: ") + e.what());
    }

    const nlohmann::json* routes = nullptr;
    if (doc.is_array()) {
        routes = &doc;
    } else if (doc.is_object() && doc.contains("routes") && doc["routes"].is_array()) {
        routes = &doc["routes"];
    } else {
        throw ParseError(ParseError::Kind::malformed_solution,
                         "solution dump needs a top-level array or a \"routes\" key");
    }

    std::vector<std::vector<int>> out;
    for (const auto& route : *routes) {
        if (!route.is_array())
            throw ParseError(ParseError::Kind::malformed_solution,
                             "each route must be an array of stops");
        std::vector<int> ids;
        for (const auto& stop : route) {
            if (stop.is_number_integer())
                ids.push_back(stop.get<int>());
            else if (stop.is_object() && stop.contains("id") &&
                     stop["id"].is_number_integer())
                ids.push_back(stop["id"].get<int>());
            else
                throw ParseError(ParseError::Kind::malformed_solution,
                                 "each stop must be an integer id or an object "
                                 "with an \"id\" field");
        }
        out.push_back(std::move(ids));
    }
    return out;
}

std::string write_report(const SuiteReport& report, ReportFormat format) {
    const bool multi_mode = report.modes.size() > 1;

    std::ostringstream os;
    std::ostringstream header_note;
    header_note << "seeds=" << report.seed_count << " L=" << report.archive_size
                << " particles=" << report.particles << " rate=" << report.rate
                << " modes=";
    for (std::size_t k = 0; k < report.modes.size(); ++k) {
        if (k) header_note << "+";
        header_note << report.modes[k];
    }

    std::vector<std::string> columns;
    if (multi_mode) columns.push_back("mode");
    for (const char* c : {"instance", "capacity", "best NV", "best TD", "mean TD",
                          "std TD", "mean CPU s", "reference NV", "reference TD",
                          "marker"})
        columns.push_back(c);

    auto row_cells = [&](const SuiteRow& r) {
        std::vector<std::string> cells;
        if (multi_mode) cells.push_back(r.mode);
        cells.push_back(r.instance);
        cells.push_back(number_text(r.capacity));
        cells.push_back(std::to_string(r.best_nv));
        cells.push_back(fixed2(r.best_td));
        cells.push_back(fixed2(r.mean_td));
        cells.push_back(fixed2(r.std_td));
        cells.push_back(fixed2(r.mean_cpu));
        cells.push_back(r.ref_nv ? std::to_string(*r.ref_nv) : std::string());
        cells.push_back(r.ref_td ? fixed2(*r.ref_td) : std::string());
        cells.push_back(r.ref_nv ? marker_text(r.marker) : std::string());
        return cells;
    };

    if (format == ReportFormat::csv) {
        os << "# " << header_note.str() << "\n";
        for (std::size_t k = 0; k < columns.size(); ++k) {
            if (k) os << ",";
            os << columns[k];
        }
        os << "\n";
        for (const SuiteRow& r : report.rows) {
            auto cells = row_cells(r);
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) os << ",";
                os << cells[k];
            }
            os << "\n";
        }
    } else {
        os << "Benchmark report (" << header_note.str() << ")\n\n";
        os << "|";
        for (const auto& c : columns) os << " " << c << " |";
        os << "\n|";
        for (std::size_t k = 0; k < columns.size(); ++k) os << " --- |";
        os << "\n";
        for (const SuiteRow& r : report.rows) {
            os << "|";
            for (const auto& cell : row_cells(r)) os << " " << cell << " |";
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace rwpso
