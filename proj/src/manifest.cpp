#include "etc/manifest.hpp"

#include <fstream>

#include <json.hpp>

namespace etc {

using nlohmann::json;

PlacementManifest manifest_of(const AssemblyResult& result, int block) {
    PlacementManifest m;
    m.rows = result.rows;
    m.cols = result.cols;
    m.block = block;
    m.cell = result.cell;
    m.orientation = result.pose;
    return m;
}

PlacementManifest manifest_of(const GroundTruth& truth, int block) {
    PlacementManifest m;
    m.rows = truth.rows;
    m.cols = truth.cols;
    m.block = block;
    m.cell = truth.cell;
    m.orientation = truth.orientation;
    return m;
}

AssemblyResult assembly_from_manifest(const PlacementManifest& m) {
    AssemblyResult r;
    r.rows = m.rows;
    r.cols = m.cols;
    r.cell = m.cell;
    r.pose = m.orientation;
    r.canvas.assign(static_cast<size_t>(m.rows) * m.cols, -1);
    for (size_t p = 0; p < m.cell.size(); ++p) {
        const Cell& c = m.cell[p];
        if (c.x < 0) continue;
        if (c.x >= m.cols || c.y >= m.rows) throw IoError("manifest cell out of range");
        int& slot = r.canvas[static_cast<size_t>(c.y) * m.cols + c.x];
        if (slot >= 0) throw IoError("manifest places two pieces in one cell");
        slot = static_cast<int>(p);
    }
    return r;
}

GroundTruth truth_from_manifest(const PlacementManifest& m) {
    GroundTruth t;
    t.rows = m.rows;
    t.cols = m.cols;
    t.cell = m.cell;
    t.orientation = m.orientation;
    return t;
}

namespace {

const char* inversion_name(Inversion i) {
    switch (i) {
        case Inversion::None: return "none";
        case Inversion::H: return "H";
        case Inversion::V: return "V";
    }
    return "none";
}

Inversion inversion_from(const std::string& s) {
    if (s == "none") return Inversion::None;
    if (s == "H") return Inversion::H;
    if (s == "V") return Inversion::V;
    throw IoError("bad inversion value '" + s + "'");
}

ColorPerm color_perm_from(const std::string& s) {
    for (ColorPerm p = 0; p < 6; ++p)
        if (s == kColorPermName[p]) return p;
    throw IoError("bad color permutation '" + s + "'");
}

} // namespace

PlacementManifest read_placement_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("malformed manifest " + path + ": " + e.what());
    }
    PlacementManifest m;
    try {
        m.rows = j.at("rows").get<int>();
        m.cols = j.at("cols").get<int>();
        m.block = j.at("block").get<int>();
        const json& pieces = j.at("pieces");
        m.cell.resize(pieces.size(), Cell{-1, -1});
        m.orientation.resize(pieces.size());
        for (const json& pj : pieces) {
            size_t id = pj.at("id").get<size_t>();
            if (id >= m.cell.size()) throw IoError("manifest piece id out of range");
            if (!pj.at("cell").is_null()) {
                m.cell[id] = {pj.at("cell").at(1).get<int>(), pj.at("cell").at(0).get<int>()};
            }
            BlockTransform t;
            int rot = pj.at("rotation").get<int>();
            if (rot % 90 != 0) throw IoError("rotation must be a multiple of 90");
            t.rotation = Rotation(((rot / 90) % 4 + 4) % 4);
            t.inversion = inversion_from(pj.at("inversion").get<std::string>());
            t.negpos = pj.at("negpos").get<bool>();
            t.color_perm = color_perm_from(pj.at("color_perm").get<std::string>());
            m.orientation[id] = t;
        }
    } catch (const json::exception& e) {
        throw IoError("manifest " + path + " missing field: " + e.what());
    }
    return m;
}

void write_placement_manifest(const PlacementManifest& m, const std::string& path) {
    json pieces = json::array();
    for (size_t p = 0; p < m.cell.size(); ++p) {
        json pj;
        pj["id"] = p;
        if (m.cell[p].x < 0)
            pj["cell"] = nullptr;
        else
            pj["cell"] = {m.cell[p].y, m.cell[p].x}; // row, col
        const BlockTransform& t = m.orientation[p];
        pj["rotation"] = 90 * int(t.rotation);
        pj["inversion"] = inversion_name(t.inversion);
        pj["negpos"] = t.negpos;
        pj["color_perm"] = kColorPermName[t.color_perm];
        pieces.push_back(std::move(pj));
    }
    json j;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["block"] = m.block;
    j["pieces"] = std::move(pieces);

    std::ofstream out(path);
    if (!out) throw IoError("cannot create manifest " + path);
    out << j.dump(2) << "\n";
}

} // namespace etc
