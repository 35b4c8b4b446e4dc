#include "bcs/io/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace bcs {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns,
                     const std::map<std::string, std::string>& params)
    : path_(std::move(path)), ncols_(columns.size()) {
    FILE* f = std::fopen(path_.c_str(), "w");
    if (!f) throw std::runtime_error("csv: cannot open " + path_ + " for writing");
    out_ = f;
    if (!params.empty()) {
        std::fputc('#', f);
        for (const auto& [k, v] : params) std::fprintf(f, " %s=%s", k.c_str(), v.c_str());
        std::fputc('\n', f);
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::row(const std::vector<double>& values) {
    if (!out_) throw std::runtime_error("csv: writer already closed");
    if (values.size() != ncols_) throw std::runtime_error("csv: row width mismatch in " + path_);
    FILE* f = static_cast<FILE*>(out_);
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f, "%.17g%s", values[i], i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::close() {
    if (out_) {
        std::fclose(static_cast<FILE*>(out_));
        out_ = nullptr;
    }
}

}  // namespace bcs
