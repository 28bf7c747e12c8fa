#include "ffiredt/corpus.hpp"

#include <fstream>
#include <set>
#include <string>

#include "ffiredt/error.hpp"

namespace ffiredt {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open manifest: " + path.string());
    const std::filesystem::path base = path.parent_path();

    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto comma = line.rfind(',');
        if (comma == std::string::npos) {
            throw Error("manifest line " + std::to_string(line_no) + ": expected path,label");
        }
        const std::string path_field = trim(line.substr(0, comma));
        const std::string label_field = trim(line.substr(comma + 1));
        if (path_field.empty()) {
            throw Error("manifest line " + std::to_string(line_no) + ": empty path");
        }
        const auto label = label_from_name(label_field);
        if (!label) {
            throw Error("manifest line " + std::to_string(line_no) + ": unknown label '" +
                        label_field + "' (expected fire, not_fire or unlabeled)");
        }
        if (!seen.insert(path_field).second) {
            throw Error("manifest line " + std::to_string(line_no) + ": duplicate path '" +
                        path_field + "'");
        }

        std::filesystem::path p(path_field);
        if (p.is_relative()) p = base / p;
        entries.push_back({std::move(p), *label});
    }
    return entries;
}

void write_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write manifest: " + path.string());
    out << "# path,label\n";
    for (const ManifestEntry& e : entries) {
        out << e.path.generic_string() << ',' << label_name(e.label) << '\n';
    }
    if (!out) throw Error("failed writing manifest: " + path.string());
}

}  // namespace ffiredt
