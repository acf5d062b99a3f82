#include "censorlab/csv.hpp"

namespace censorlab::csv {

std::optional<std::vector<std::string>> Reader::next() {
    int c = in_.get();
    if (c == std::istream::traits_type::eof()) return std::nullopt;

    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;

    while (true) {
        if (c == std::istream::traits_type::eof()) {
            fields.push_back(std::move(field));
            return fields;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                int peek = in_.peek();
                if (peek == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return fields;
        } else {
            field.push_back(ch);
        }
        c = in_.get();
    }
}

std::string escape_field(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out.push_back(ch);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out.put(',');
        out << escape_field(fields[i]);
    }
    out.put('\n');
}

}  // namespace censorlab::csv
