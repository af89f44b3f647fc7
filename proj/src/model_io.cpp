/*
 * Copyright 2026 The srt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "srt/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srt/errors.hpp"

namespace srt {

using json = nlohmann::json;

namespace {

json params_to_json(const WorkingParams& p) {
    return {{"omega1", p.omega1},
            {"omega2", p.omega2.value_or(0.0)},
            {"omega3", p.omega3},
            {"omega4", p.omega4},
            {"epsilon", p.epsilon},
            {"kernel", to_string(p.kernel)},
            {"imq_beta", p.imq_beta},
            {"n_i_root", p.n_i_root.value_or(0)},
            {"min_centers", p.min_centers.value_or(0)},
            {"subset_factor", p.subset_factor},
            {"n_trees", p.n_trees}};
}

WorkingParams params_from_json(const json& j) {
    WorkingParams p;
    p.omega1 = j.at("omega1").get<double>();
    p.omega2 = j.at("omega2").get<double>();
    p.omega3 = j.at("omega3").get<double>();
    p.omega4 = j.at("omega4").get<double>();
    p.epsilon = j.at("epsilon").get<double>();
    p.kernel = kernel_kind_from_string(j.at("kernel").get<std::string>());
    p.imq_beta = j.at("imq_beta").get<double>();
    p.n_i_root = j.at("n_i_root").get<std::size_t>();
    p.min_centers = j.at("min_centers").get<std::size_t>();
    p.subset_factor = j.at("subset_factor").get<double>();
    p.n_trees = j.at("n_trees").get<std::size_t>();
    return p;
}

void nodes_to_json(const TreeNode& node, json& nodes) {
    const std::size_t id = nodes.size();
    nodes.push_back(json::object());
    const auto& ref = node.refinement;
    json centers = json::array();
    for (std::size_t l = 0; l < ref.centers.size(); ++l) {
        auto c = ref.centers[l];
        centers.push_back(std::vector<double>(c.begin(), c.end()));
    }
    json n = {{"id", id},
              {"status", to_string(node.status)},
              {"depth", node.stats.depth},
              {"n_points", node.stats.n_points},
              {"n_subset", node.stats.n_subset},
              {"residual_rae", node.stats.residual_rae},
              {"n_bar_c", node.stats.n_bar_c},
              {"box_lo", node.stats.box_lo},
              {"box_hi", node.stats.box_hi},
              {"kernel", to_string(ref.kernel.kind)},
              {"delta", ref.kernel.delta},
              {"beta", ref.kernel.beta},
              {"centers", std::move(centers)},
              {"coefficients", ref.coefficients},
              {"kappa", ref.diagnostics.kappa},
              {"stop_reason", to_string(ref.diagnostics.stop_reason)},
              {"eps_trail", ref.diagnostics.eps_trail}};
    if (!node.is_leaf()) {
        n["normal"] = node.split->normal;
        n["threshold"] = node.split->threshold;
        nodes_to_json(*node.children[0], nodes);
        const std::size_t second = nodes.size();
        nodes_to_json(*node.children[1], nodes);
        n["children"] = {id + 1, second};
    }
    nodes[id] = std::move(n);
}

std::unique_ptr<TreeNode> node_from_json(const json& nodes, std::size_t id, std::size_t dim) {
    if (id >= nodes.size()) throw FormatError("model: child id out of range");
    const json& n = nodes.at(id);
    if (n.at("id").get<std::size_t>() != id) throw FormatError("model: node ids are not in document order");
    auto node = std::make_unique<TreeNode>();
    node->status = node_status_from_string(n.at("status").get<std::string>());
    node->stats.depth = n.at("depth").get<std::size_t>();
    node->stats.n_points = n.at("n_points").get<std::size_t>();
    node->stats.n_subset = n.at("n_subset").get<std::size_t>();
    node->stats.residual_rae = n.at("residual_rae").get<double>();
    node->stats.n_bar_c = n.at("n_bar_c").get<double>();
    node->stats.box_lo = n.at("box_lo").get<std::vector<double>>();
    node->stats.box_hi = n.at("box_hi").get<std::vector<double>>();

    auto& ref = node->refinement;
    ref.kernel.kind = kernel_kind_from_string(n.at("kernel").get<std::string>());
    ref.kernel.delta = n.at("delta").get<double>();
    ref.kernel.beta = n.at("beta").get<double>();
    ref.centers = PointSet(dim);
    for (const auto& c : n.at("centers")) {
        const auto coords = c.get<std::vector<double>>();
        if (coords.size() != dim) throw FormatError("model: center dimension mismatch");
        ref.centers.push_back(coords);
    }
    ref.coefficients = n.at("coefficients").get<std::vector<double>>();
    if (ref.coefficients.size() != ref.centers.size())
        throw FormatError("model: coefficient count differs from center count");
    ref.diagnostics.kappa = n.at("kappa").get<double>();
    ref.diagnostics.stop_reason = stop_reason_from_string(n.at("stop_reason").get<std::string>());
    ref.diagnostics.eps_trail = n.at("eps_trail").get<std::vector<double>>();

    if (n.contains("children")) {
        const auto kids = n.at("children").get<std::vector<std::size_t>>();
        if (kids.size() != 2 || kids[0] <= id || kids[1] <= id) throw FormatError("model: malformed child ids");
        Hyperplane plane;
        plane.normal = n.at("normal").get<std::vector<double>>();
        plane.threshold = n.at("threshold").get<double>();
        if (plane.normal.size() != dim) throw FormatError("model: hyperplane dimension mismatch");
        node->split = std::move(plane);
        node->children[0] = node_from_json(nodes, kids[0], dim);
        node->children[1] = node_from_json(nodes, kids[1], dim);
        if (node->status != NodeStatus::Internal) throw FormatError("model: leaf status on a split node");
    } else if (node->status == NodeStatus::Internal) {
        throw FormatError("model: internal node without children");
    }
    return node;
}

json tree_to_json(const SrtModel& tree) {
    json nodes = json::array();
    if (tree.root) nodes_to_json(*tree.root, nodes);
    return {{"seed", tree.seed}, {"split_mode", to_string(tree.mode)}, {"params", params_to_json(tree.params)},
            {"nodes", std::move(nodes)}};
}

std::string document(json trees, ModelKind kind, std::size_t dim, std::uint64_t master_seed) {
    json doc = {{"format", "srt-model"},
                {"version", kModelFormatVersion},
                {"kind", kind == ModelKind::Srt ? "srt" : "srf"},
                {"dim", dim},
                {"master_seed", master_seed},
                {"trees", std::move(trees)}};
    return doc.dump(1) + "\n";
}

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw DataError("write failed for '" + path.string() + "'");
}

} // namespace

std::string serialize_model(const SrtModel& model) {
    return document(json::array({tree_to_json(model)}), ModelKind::Srt, model.dim, model.seed);
}

std::string serialize_model(const SrfModel& model) {
    json trees = json::array();
    for (const auto& t : model.trees) trees.push_back(tree_to_json(t));
    return document(std::move(trees), ModelKind::Srf, model.dim(), model.master_seed);
}

void save_model(const SrtModel& model, const std::filesystem::path& path) { write_text(serialize_model(model), path); }
void save_model(const SrfModel& model, const std::filesystem::path& path) { write_text(serialize_model(model), path); }

LoadedModel deserialize_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: not a valid document: ") + e.what());
    }
    try {
        if (!doc.is_object() || doc.value("format", "") != "srt-model") throw FormatError("model: unknown format tag");
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion)
            throw UnsupportedVersion("model: unsupported version " + std::to_string(version) + " (expected " +
                                     std::to_string(kModelFormatVersion) + ")");
        LoadedModel out;
        const auto kind = doc.at("kind").get<std::string>();
        if (kind == "srt")
            out.kind = ModelKind::Srt;
        else if (kind == "srf")
            out.kind = ModelKind::Srf;
        else
            throw FormatError("model: unknown kind '" + kind + "'");
        const std::size_t dim = doc.at("dim").get<std::size_t>();
        if (dim == 0) throw FormatError("model: zero dimension");
        out.forest.master_seed = doc.at("master_seed").get<std::uint64_t>();
        for (const auto& t : doc.at("trees")) {
            SrtModel tree;
            tree.dim = dim;
            tree.seed = t.at("seed").get<std::uint64_t>();
            tree.mode = split_mode_from_string(t.at("split_mode").get<std::string>());
            tree.params = params_from_json(t.at("params"));
            const json& nodes = t.at("nodes");
            if (nodes.empty()) throw FormatError("model: tree without nodes");
            tree.root = node_from_json(nodes, 0, dim);
            out.forest.trees.push_back(std::move(tree));
        }
        if (out.forest.trees.empty()) throw FormatError("model: no trees");
        if (out.kind == ModelKind::Srt && out.forest.trees.size() != 1)
            throw FormatError("model: single-tree document holds several trees");
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: malformed document: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("model: ") + e.what());
    }
}

LoadedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str());
}

} // namespace srt
