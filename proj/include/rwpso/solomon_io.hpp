#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rwpso/report.hpp"
#include "rwpso/vrptw.hpp"

namespace rwpso {

struct CustomerRow {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    double demand = 0.0;
    double ready = 0.0;
    double due = 0.0;
    double service = 0.0;

    bool operator==(const CustomerRow&) const = default;
};

struct RawInstanceFile {
    std::string name;
    int vehicle_count_declared = 0;
    double capacity = 0.0;
    std::vector<CustomerRow> rows;  // rows[0] is the depot
};

struct ParseError : std::runtime_error {
    enum class Kind {
        malformed_header,
        malformed_row,
        non_contiguous_ids,
        malformed_solution
    };
    ParseError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind(kind) {}
    Kind kind;
};

// Classic Solomon layout: a name line, a VEHICLE section with one
// NUMBER/CAPACITY data line, a CUSTOMER section header, then one 7-field
// numeric row per customer with the depot first. Whitespace is free-form and
// blank lines are ignored.
RawInstanceFile parse_instance(std::string_view text);

RawInstanceFile parse_instance_file(const std::string& path);

// Keeps the depot plus the first n customers in file order and suffixes the
// name with ".n". Throws std::out_of_range when n is not in [1, customers].
RawInstanceFile truncate(const RawInstanceFile& raw, int n);

// Canonical re-serialization in the classic layout. parse_instance is the
// exact inverse; serializing a truncation of the full row set reproduces the
// customer section byte for byte.
std::string format_instance(const RawInstanceFile& raw);

// Builds the immutable evaluation model: Euclidean distance matrix, travel
// time at speed 1, scheduling horizon from the depot row. Semantic validation
// (window sanity, demand vs capacity, reachability) happens here.
Instance build_instance(const RawInstanceFile& raw);

// JSON solution dump: an object whose "routes" key holds one array per
// vehicle, each stop an object {"id": customer, "begin": service start}.
// nv and td ride along for human readers.
std::string write_solution(const RoutePlan& plan);

// Reads the route id lists back out of a solution dump. Accepts a top-level
// array as well as the object form, and bare integer stops as well as
// {"id": ...} objects. Throws ParseError(malformed_solution) otherwise.
std::vector<std::vector<int>> read_solution(const std::string& text);

enum class ReportFormat { csv, markdown };

// One row per benchmark cell with the fixed column set:
// instance, capacity, best NV, best TD, mean TD, std TD, mean CPU s,
// reference NV, reference TD, marker. A leading "mode" column appears only
// when the report covers more than one mode. Numbers are rendered with two
// decimals, round-half-up, locale-independent.
std::string write_report(const SuiteReport& report, ReportFormat format);

}  // namespace rwpso
