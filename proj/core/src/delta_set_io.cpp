#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "lie/delta_sets.hpp"
#include "lie/errors.hpp"

namespace lie {

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void save_delta_set(const DeltaSet &s, const std::string &path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    nlohmann::json hdr;
    hdr["backend"] = s.ambient.name();
    hdr["delta"] = s.delta;
    hdr["radius"] = s.radius;
    hdr["size"] = s.size();
    hdr["truncated"] = s.truncated;
    hdr["dropped"] = s.dropped;
    f << hdr.dump() << "\n";
    const int d = s.dim();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::int32_t *p = s.point(i);
        for (int j = 0; j < d; ++j) {
            if (j) f << ',';
            f << p[j];
        }
        f << '\n';
    }
    if (!f) throw UsageError("write to " + path + " failed");
}

DeltaSet load_delta_set(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError("missing header line in " + path);
    nlohmann::json hdr;
    try {
        hdr = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad header: ") + e.what());
    }
    DeltaSet s;
    try {
        s.ambient = Backend::parse(hdr.at("backend").get<std::string>());
        s.delta = hdr.at("delta").get<double>();
        s.radius = hdr.at("radius").get<double>();
        s.truncated = hdr.at("truncated").get<bool>();
        s.dropped = hdr.at("dropped").get<std::size_t>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("bad header field: ") + e.what());
    }
    const std::size_t expect = hdr.at("size").get<std::size_t>();
    const int d = s.dim();
    std::size_t rows = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        int got = 0;
        while (std::getline(ss, cell, ',')) {
            try {
                s.pts.push_back(static_cast<std::int32_t>(std::stol(cell)));
            } catch (const std::exception &) {
                throw ParseError("bad coordinate '" + cell + "' in " + path);
            }
            ++got;
        }
        if (got != d) throw ParseError("row with wrong arity in " + path);
        ++rows;
    }
    if (rows != expect) throw ParseError("point count does not match header in " + path);
    return s;
}

void save_profile(const CoveringProfile &p, const std::string &path) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open " + path + " for writing");
    f << "# delta=" << fmt_double(p.delta) << "\n";
    f << "rho,count\n";
    for (std::size_t i = 0; i < p.rho.size(); ++i)
        f << fmt_double(p.rho[i]) << ',' << p.count[i] << '\n';
    if (!f) throw UsageError("write to " + path + " failed");
}

CoveringProfile load_profile(const std::string &path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    CoveringProfile p;
    std::string line;
    if (!std::getline(f, line) || line.rfind("# delta=", 0) != 0)
        throw ParseError("missing resolution header in " + path);
    try {
        p.delta = std::stod(line.substr(8));
    } catch (const std::exception &) {
        throw ParseError("bad resolution in " + path);
    }
    if (!std::getline(f, line) || line != "rho,count")
        throw ParseError("missing column header in " + path);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("bad row in " + path);
        try {
            p.rho.push_back(std::stod(line.substr(0, comma)));
            p.count.push_back(static_cast<std::size_t>(std::stoull(line.substr(comma + 1))));
        } catch (const std::exception &) {
            throw ParseError("bad row in " + path);
        }
    }
    return p;
}

}  // namespace lie
