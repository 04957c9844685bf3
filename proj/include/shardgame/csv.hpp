#ifndef SHARDGAME_CSV_HPP
#define SHARDGAME_CSV_HPP

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shardgame {

/// File-system level failure (open/write), as opposed to bad input data.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Deterministic CSV emitter: fixed column order, numbers at 9 significant
/// digits, '.' radix, '\n' line ends.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    CsvWriter& field(const std::string& value);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    void end_row();

    /// Flushes; throws IoError if any write failed.
    void close();

    static std::string format_number(double value);

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::size_t current_ = 0;
};

}  // namespace shardgame

#endif
