#include <set>
#include <utility>

#include <json.hpp>

#include "hyperb/cube_complex.hpp"
#include "hyperb/errors.hpp"

namespace hyperb {

namespace {

using json = nlohmann::ordered_json;

std::vector<long long> dim_offsets(const CubeComplex& C) {
    std::vector<long long> off(C.dim + 2, 0);
    for (int k = 0; k <= C.dim; ++k) off[k + 1] = off[k] + C.counts[k];
    return off;
}

json build_json(const CubeComplex& C) {
    const auto off = dim_offsets(C);
    json j;
    j["version"] = 1;
    j["dim"] = C.dim;
    j["cells"] = C.counts;
    json facets = json::array();
    for (int k = 1; k <= C.dim; ++k) {
        for (int c = 0; c < C.counts[k]; ++c) {
            for (int slot = 0; slot < 2 * k; ++slot) {
                const FacetRecord& rec = C.facets[k][c][slot];
                json row = json::array({off[k] + c, slot, off[k - 1] + rec.cell});
                if (rec.flips != 0) row.push_back(rec.flips);
                facets.push_back(std::move(row));
            }
        }
    }
    j["facets"] = std::move(facets);
    if (C.folding) {
        json axis_image = json::array(), axis_flip = json::array(), fixed_side = json::array();
        for (int k = 0; k <= C.dim; ++k) {
            for (int c = 0; c < C.counts[k]; ++c) {
                const CellFace& f = C.folding->faces[k][c];
                axis_image.push_back(f.axis_image);
                axis_flip.push_back(f.axis_flip);
                fixed_side.push_back(f.fixed_side);
            }
        }
        j["folding"] = {{"axis_image", std::move(axis_image)},
                        {"axis_flip", std::move(axis_flip)},
                        {"fixed_side", std::move(fixed_side)}};
    }
    j["flags"] = C.flags;
    return j;
}

// Resolves a global cell id to (dimension, local id).
std::pair<int, int> split_id(const std::vector<long long>& off, long long id) {
    for (std::size_t k = 0; k + 1 < off.size(); ++k)
        if (id >= off[k] && id < off[k + 1]) return {(int)k, (int)(id - off[k])};
    throw precondition_error("cell id out of range: " + std::to_string(id));
}

} // namespace

std::string cube_complex_to_json(const CubeComplex& C) { return build_json(C).dump(2) + "\n"; }

uint64_t cube_complex_hash(const CubeComplex& C) {
    const std::string text = build_json(C).dump();
    uint64_t h = 14695981039346656037ull;
    for (unsigned char b : text) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

CubeComplex cube_complex_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw precondition_error("invalid JSON");
    try {
        if (!j.is_object() || j.at("version").get<int>() != 1)
            throw precondition_error("unsupported complex format version");
        CubeComplex C;
        C.dim = j.at("dim").get<int>();
        if (C.dim < 0 || C.dim > 31) throw precondition_error("dim out of range");
        C.counts = j.at("cells").get<std::vector<int>>();
        if ((int)C.counts.size() != C.dim + 1)
            throw precondition_error("cells must list dim+1 counts");
        for (int c : C.counts)
            if (c < 0) throw precondition_error("negative cell count");
        C.facets.resize(C.dim + 1);
        for (int k = 0; k <= C.dim; ++k)
            C.facets[k].assign(C.counts[k], std::vector<FacetRecord>(2 * k));
        const auto off = dim_offsets(C);
        std::set<std::pair<long long, int>> seen;
        for (const json& row : j.at("facets")) {
            if (!row.is_array() || row.size() < 3 || row.size() > 4)
                throw precondition_error("facet rows must have 3 or 4 entries");
            const auto [k, c] = split_id(off, row[0].get<long long>());
            if (k < 1) throw precondition_error("vertex listed with a facet");
            const int slot = row[1].get<int>();
            if (slot < 0 || slot >= 2 * k) throw precondition_error("facet slot out of range");
            const auto [kf, cf] = split_id(off, row[2].get<long long>());
            if (kf != k - 1) throw precondition_error("facet must drop exactly one dimension");
            if (!seen.insert({row[0].get<long long>(), slot}).second)
                throw precondition_error("duplicate facet row");
            FacetRecord rec;
            rec.cell = cf;
            rec.flips = row.size() == 4 ? row[3].get<uint32_t>() : 0;
            C.facets[k][c][slot] = rec;
        }
        if (j.contains("folding")) {
            const json& f = j.at("folding");
            FoldingMap F;
            F.faces.resize(C.dim + 1);
            const auto& imgs = f.at("axis_image");
            const auto& flips = f.at("axis_flip");
            const auto& fixes = f.at("fixed_side");
            if ((long long)imgs.size() != off.back() || (long long)flips.size() != off.back() ||
                (long long)fixes.size() != off.back())
                throw precondition_error("folding arrays must cover every cell");
            for (int k = 0; k <= C.dim; ++k) {
                F.faces[k].resize(C.counts[k]);
                for (int c = 0; c < C.counts[k]; ++c) {
                    const long long g = off[k] + c;
                    F.faces[k][c] = CellFace{imgs[g].get<std::vector<int>>(),
                                             flips[g].get<uint32_t>(), fixes[g].get<uint32_t>()};
                }
            }
            C.folding = std::move(F);
        }
        if (j.contains("flags"))
            C.flags = j.at("flags").get<std::map<std::string, bool>>();
        return C;
    } catch (const json::exception& e) {
        throw precondition_error(std::string("malformed complex JSON: ") + e.what());
    }
}

} // namespace hyperb
