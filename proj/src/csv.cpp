#include "shardgame/csv.hpp"

#include <cstdio>

namespace shardgame {

std::string CsvWriter::format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw IoError(path + ": cannot open for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

CsvWriter& CsvWriter::field(const std::string& value) {
    if (current_) out_ << ',';
    out_ << value;
    ++current_;
    return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_number(value)); }

CsvWriter& CsvWriter::field(long long value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
    if (current_ != columns_)
        throw std::logic_error(path_ + ": csv row has wrong number of fields");
    out_ << '\n';
    current_ = 0;
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) throw IoError(path_ + ": write failed");
    out_.close();
}

}  // namespace shardgame
