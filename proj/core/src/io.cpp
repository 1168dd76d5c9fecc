#include <feec/io.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace feec {

using nlohmann::json;

Rational rational_from_json(const json& j)
{
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return rat_of(j.get<long>());
    if (j.is_number_float()) return rat_parse(j.dump());
    throw InputError("expected a number or a rational string");
}

std::string rational_to_json(const Rational& x) { return rat_to_string(x); }

Complex mesh_from_json(const json& j)
try {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("cells"))
        throw InputError("mesh JSON needs \"vertices\" and \"cells\"");

    std::vector<std::vector<Rational>> vertices;
    for (const auto& row : j.at("vertices")) {
        std::vector<Rational> v;
        for (const auto& x : row) v.push_back(rational_from_json(x));
        vertices.push_back(std::move(v));
    }
    std::vector<std::vector<int>> cells;
    for (const auto& row : j.at("cells"))
        cells.push_back(row.get<std::vector<int>>());

    bool boundary_auto = true;
    std::vector<std::vector<int>> boundary;
    if (j.contains("boundary") && !j.at("boundary").is_string()) {
        boundary_auto = false;
        for (const auto& row : j.at("boundary"))
            boundary.push_back(row.get<std::vector<int>>());
    } else if (j.contains("boundary") && j.at("boundary").get<std::string>() != "auto") {
        throw InputError("mesh \"boundary\" must be \"auto\" or a list of simplices");
    }
    return build_complex(cells, vertices, boundary_auto, boundary);
} catch (const json::exception& e) {
    throw InputError("malformed mesh JSON: " + std::string(e.what()));
}

Complex load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open mesh file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("malformed mesh JSON: " + std::string(e.what()));
    }
    return mesh_from_json(j);
}

namespace {

SpaceTag tag_from_json(const json& j, int k, const char* what)
{
    std::string family = j.at("family").get<std::string>();
    int order = j.at("order").get<int>();
    if (family == "trimmed") {
        if (order < 1) throw InputError(std::string(what) + ": trimmed order must be >= 1");
        return SpaceTag::trimmed(order);
    }
    if (family == "full") {
        if (order - k < 0)
            throw InputError(std::string(what) + ": full order too small for degree "
                             + std::to_string(k));
        return SpaceTag::full(order);
    }
    throw InputError(std::string(what) + ": family must be \"trimmed\" or \"full\"");
}

} // namespace

SequenceAssignment order_spec_from_json(const json& j, const Complex& c)
try {
    if (!j.is_object() || !j.contains("default"))
        throw InputError("order spec needs a \"default\" entry");
    const auto& def = j.at("default");
    std::string family = def.at("family").get<std::string>();
    int order = def.at("order").get<int>();
    Family fam;
    if (family == "trimmed")
        fam = Family::Trimmed;
    else if (family == "full")
        fam = Family::Full;
    else
        throw InputError("order spec: family must be \"trimmed\" or \"full\"");
    if (fam == Family::Trimmed && order < 1)
        throw InputError("order spec: trimmed default order must be >= 1");
    if (fam == Family::Full && order < c.dim())
        throw InputError("order spec: full default order must be >= the mesh dimension");
    SequenceAssignment a = uniform_assignment(c, fam, order);

    if (j.contains("overrides"))
        for (const auto& ov : j.at("overrides")) {
            std::vector<int> verts = ov.at("simplex").get<std::vector<int>>();
            std::sort(verts.begin(), verts.end());
            int m = static_cast<int>(verts.size()) - 1;
            if (m < 0 || m > c.dim())
                throw InputError("order spec override: bad simplex");
            int idx = c.index_of(m, verts);
            if (idx < 0)
                throw InputError("order spec override: simplex not in the mesh");
            int k = ov.at("k").get<int>();
            if (k < 0 || k > m)
                throw InputError("order spec override: form degree out of range");
            a.types[m][idx].tags[k] =
                tag_from_json(ov, k, "order spec override");
        }
    return a;
} catch (const json::exception& e) {
    throw InputError("malformed order spec JSON: " + std::string(e.what()));
}

SequenceAssignment load_order_spec(const std::string& path, const Complex& c)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open order spec file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("malformed order spec JSON: " + std::string(e.what()));
    }
    return order_spec_from_json(j, c);
}

namespace {

std::string simplex_key(const Complex& c, int sdim, int index)
{
    std::ostringstream out;
    const auto& verts = c.simplex(sdim, index);
    for (size_t i = 0; i < verts.size(); ++i)
        out << (i ? "," : "") << verts[i];
    return out.str();
}

} // namespace

json form_to_json(const GlobalForm& g)
{
    const DofLayout& L = *g.layout;
    const Complex& c = *L.complex;
    json out;
    out["layout-hash"] = L.hash;
    json whitney = json::array();
    for (size_t i = 0; i < L.whitney.size(); ++i)
        whitney.push_back(rational_to_json(g.coeff[i]));
    out["whitney"] = whitney;
    json interior = json::object();
    for (const auto& blk : L.blocks) {
        if (blk.size == 0) continue;
        json coeffs = json::array();
        for (int i = 0; i < blk.size; ++i)
            coeffs.push_back(rational_to_json(g.coeff[blk.offset + i]));
        interior[simplex_key(c, blk.sdim, blk.index)] = coeffs;
    }
    out["interior"] = interior;
    return out;
}

GlobalForm form_from_json(const json& j, const DofLayout& layout)
try {
    if (!j.is_object() || !j.contains("whitney"))
        throw InputError("form JSON needs a \"whitney\" array");
    if (j.contains("layout-hash") && j.at("layout-hash").get<std::string>() != layout.hash)
        throw InputError("form JSON does not match the layout (hash mismatch)");

    GlobalForm g = zero_form(layout);
    const auto& whitney = j.at("whitney");
    if (whitney.size() != layout.whitney.size())
        throw InputError("form JSON: wrong number of lowest-order coefficients");
    for (size_t i = 0; i < layout.whitney.size(); ++i)
        g.coeff[i] = rational_from_json(whitney[i]);

    const Complex& c = *layout.complex;
    std::map<std::string, int> block_by_key;
    for (size_t b = 0; b < layout.blocks.size(); ++b)
        block_by_key[simplex_key(c, layout.blocks[b].sdim, layout.blocks[b].index)] =
            static_cast<int>(b);
    if (j.contains("interior"))
        for (const auto& [key, coeffs] : j.at("interior").items()) {
            auto it = block_by_key.find(key);
            if (it == block_by_key.end())
                throw InputError("form JSON: unknown simplex \"" + key + "\"");
            const auto& blk = layout.blocks[it->second];
            if (static_cast<int>(coeffs.size()) != blk.size)
                throw InputError("form JSON: wrong block size for \"" + key + "\"");
            for (int i = 0; i < blk.size; ++i)
                g.coeff[blk.offset + i] = rational_from_json(coeffs[i]);
        }
    return g;
} catch (const json::exception& e) {
    throw InputError("malformed form JSON: " + std::string(e.what()));
}

} // namespace feec
