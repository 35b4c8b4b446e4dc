#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bcs {

// FNV-1a 64-bit content hash, reported in manifests for reproducibility.
std::uint64_t fnv1a_file(const std::string& path);
std::string fnv1a_hex(const std::string& path);

// Completion record for a CLI run: resolved parameters, produced files with
// their content hashes, and wall-clock duration.  Written last, via a
// temp-file rename, so its presence marks a finished run.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> output_files;
    double wall_seconds = 0.0;
    std::vector<std::string> notes;

    void write(const std::string& path) const;
};

}  // namespace bcs
