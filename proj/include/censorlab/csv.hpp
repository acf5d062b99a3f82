#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace censorlab::csv {

// Incremental RFC-4180 reader. Handles quoted fields, embedded commas,
// doubled quotes and CRLF/LF line endings.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    // Reads the next record, or nullopt at end of stream.
    std::optional<std::vector<std::string>> next();

private:
    std::istream& in_;
};

std::string escape_field(const std::string& field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace censorlab::csv
