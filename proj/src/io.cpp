#include "geogate/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

#include "geogate/errors.hpp"

namespace geogate {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string format_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    char buf[32];
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw InvalidArgument("format_csv: row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

nlohmann::json sequence_to_json(const PulseSequence& seq) {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : seq.segments) {
        segs.push_back({{"area", s.area},
                        {"phase", s.phase},
                        {"rabi", s.rabi},
                        {"delta_suppressed", s.delta_suppressed}});
    }
    return {{"schema_version", kSchemaVersion},
            {"family", std::string(to_string(seq.family))},
            {"params",
             {{"theta", seq.params.theta}, {"phi", seq.params.phi}, {"gamma", seq.params.gamma}}},
            {"segments", segs}};
}

PulseSequence sequence_from_json(const nlohmann::json& j) {
    try {
        PulseSequence seq;
        seq.family = parse_family(j.at("family").get<std::string>());
        const auto& p = j.at("params");
        seq.params = {p.at("theta").get<double>(), p.at("phi").get<double>(),
                      p.at("gamma").get<double>()};
        for (const auto& s : j.at("segments")) {
            PulseSegment seg;
            seg.area = s.at("area").get<double>();
            seg.phase = s.at("phase").get<double>();
            seg.rabi = s.value("rabi", 1.0);
            seg.delta_suppressed = s.value("delta_suppressed", false);
            if (!(seg.area >= 0.0) || !(seg.rabi > 0.0)) {
                throw InvalidArgument("segment needs area >= 0 and rabi > 0");
            }
            seq.segments.push_back(seg);
        }
        return seq;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("sequence json: ") + e.what());
    }
}

}  // namespace geogate
