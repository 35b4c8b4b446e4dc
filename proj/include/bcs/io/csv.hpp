#pragma once

#include <map>
#include <string>
#include <vector>

namespace bcs {

// CSV writer with a provenance header: a single '#'-prefixed line holding the
// resolved parameters, then the column names, then rows.  All numbers are
// printed with %.17g so reruns with identical inputs are byte-identical.
class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> columns,
              const std::map<std::string, std::string>& params = {});
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<double>& values);
    void close();
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::size_t ncols_;
    void* out_;  // FILE*
};

std::string format_g17(double v);

}  // namespace bcs
