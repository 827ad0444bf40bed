#include "hexid/grid.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace hexid {

std::array<Vertex, 3> neighbors(Vertex v) {
    long long s = parity(v) == 0 ? 1 : -1;
    return {Vertex{v.x + 1, v.y}, Vertex{v.x - 1, v.y}, Vertex{v.x, v.y + s}};
}

namespace {

// neighbors in counterclockwise planar order
std::array<Vertex, 3> ccw_neighbors(Vertex v) {
    if (parity(v) == 0)
        return {Vertex{v.x + 1, v.y}, Vertex{v.x, v.y + 1}, Vertex{v.x - 1, v.y}};
    return {Vertex{v.x + 1, v.y}, Vertex{v.x - 1, v.y}, Vertex{v.x, v.y - 1}};
}

int ccw_index(Vertex v, Vertex nb) {
    auto cn = ccw_neighbors(v);
    for (int i = 0; i < 3; ++i)
        if (cn[i] == nb) return i;
    throw std::logic_error("ccw_index: not a neighbor");
}

int bfs_distance(Vertex u, Vertex v) {
    if (u == v) return 0;
    std::unordered_set<Vertex, VertexHash> seen{u};
    std::vector<Vertex> frontier{u};
    for (int d = 1;; ++d) {
        std::vector<Vertex> next;
        for (Vertex w : frontier)
            for (Vertex z : neighbors(w)) {
                if (z == v) return d;
                if (seen.insert(z).second) next.push_back(z);
            }
        frontier = std::move(next);
        if (frontier.empty() || d > 1000) throw std::logic_error("distance: runaway BFS");
    }
}

}  // namespace

int distance(Vertex u, Vertex v) {
    // memo over the offset, bucketed by the parity of the first endpoint
    // (translation by an even-sum vector is an automorphism, so the distance
    // depends only on parity(u) and v-u)
    thread_local std::unordered_map<Vertex, int, VertexHash> memo[2];
    Vertex off = v - u;
    auto& m = memo[parity(u)];
    auto it = m.find(off);
    if (it != m.end()) return it->second;
    Vertex base = parity(u) == 0 ? Vertex{0, 0} : Vertex{1, 0};
    int d = bfs_distance(base, base + off);
    m.emplace(off, d);
    return d;
}

std::vector<Vertex> ball(Vertex v, int r) {
    std::unordered_set<Vertex, VertexHash> seen{v};
    std::vector<Vertex> frontier{v};
    for (int d = 0; d < r; ++d) {
        std::vector<Vertex> next;
        for (Vertex w : frontier)
            for (Vertex z : neighbors(w))
                if (seen.insert(z).second) next.push_back(z);
        frontier = std::move(next);
    }
    std::vector<Vertex> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

Automorphism::Automorphism(Vertex anchor, Vertex anchor_image,
                           const std::array<Vertex, 3>& nbrs,
                           const std::array<Vertex, 3>& images)
    : anchor_(anchor), anchor_img_(anchor_image), nbrs_(nbrs), images_(images) {
    // validate the bijection
    auto an = neighbors(anchor);
    auto in = neighbors(anchor_image);
    for (int i = 0; i < 3; ++i) {
        if (std::find(an.begin(), an.end(), nbrs_[i]) == an.end())
            throw std::invalid_argument("Automorphism: not a neighbor of the anchor");
        if (std::find(in.begin(), in.end(), images_[i]) == in.end())
            throw std::invalid_argument("Automorphism: image not a neighbor of the anchor image");
    }
    if (images_[0] == images_[1] || images_[0] == images_[2] || images_[1] == images_[2])
        throw std::invalid_argument("Automorphism: neighbor map is not a bijection");
    // chirality: does the cyclic order of neighbor images match the cyclic
    // order around the anchor image?
    int a0 = ccw_index(anchor_, nbrs_[0]), a1 = ccw_index(anchor_, nbrs_[1]);
    int b0 = ccw_index(anchor_img_, images_[0]), b1 = ccw_index(anchor_img_, images_[1]);
    int da = (a1 - a0 + 3) % 3;
    int db = (b1 - b0 + 3) % 3;
    chirality_ = (da == db) ? 1 : -1;
}

Vertex Automorphism::step(Vertex at, Vertex img_at, Vertex in_dir, Vertex img_in_dir,
                          Vertex to) const {
    // in_dir: the neighbor of `at` we arrived from; its image is known.
    // The cyclic offset from in_dir to `to` around `at` transfers with the
    // fixed chirality.
    int i0 = ccw_index(at, in_dir);
    int i1 = ccw_index(at, to);
    int j = (i1 - i0 + 3) % 3;
    int k0 = ccw_index(img_at, img_in_dir);
    int k1 = (k0 + chirality_ * j % 3 + 3) % 3;
    return ccw_neighbors(img_at)[k1];
}

Vertex Automorphism::operator()(Vertex v) const {
    if (v == anchor_) return anchor_img_;
    for (int i = 0; i < 3; ++i)
        if (v == nbrs_[i]) return images_[i];
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->map.find(v);
        if (it != cache_->map.end()) return it->second;
    }
    Vertex img = extend(v);
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->map.emplace(v, img);
    return img;
}

Vertex Automorphism::extend(Vertex v) const {
    // walk a shortest path anchor -> v, mirroring each step
    std::unordered_map<Vertex, Vertex, VertexHash> parent;
    std::vector<Vertex> frontier{anchor_};
    parent[anchor_] = anchor_;
    bool found = false;
    while (!found) {
        std::vector<Vertex> next;
        for (Vertex w : frontier)
            for (Vertex z : neighbors(w))
                if (!parent.count(z)) {
                    parent[z] = w;
                    if (z == v) found = true;
                    next.push_back(z);
                }
        frontier = std::move(next);
        if (frontier.empty()) throw std::logic_error("Automorphism: BFS failed");
    }
    std::vector<Vertex> path{v};
    while (path.back() != anchor_) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());  // anchor, n1, ..., v
    Vertex img_first{};
    for (int i = 0; i < 3; ++i)
        if (nbrs_[i] == path[1]) img_first = images_[i];
    Vertex prev = anchor_, img_prev = anchor_img_;
    Vertex cur = path[1], img_cur = img_first;
    for (size_t i = 2; i < path.size(); ++i) {
        Vertex nxt = path[i];
        Vertex img_nxt = step(cur, img_cur, prev, img_prev, nxt);
        prev = cur;
        img_prev = img_cur;
        cur = nxt;
        img_cur = img_nxt;
    }
    return img_cur;
}

std::vector<Automorphism> vertex_maps(Vertex src, Vertex dst) {
    auto sn = neighbors(src);
    auto dn = neighbors(dst);
    std::array<int, 3> idx{0, 1, 2};
    std::vector<Automorphism> out;
    std::sort(idx.begin(), idx.end());
    do {
        out.emplace_back(src, dst, sn,
                         std::array<Vertex, 3>{dn[idx[0]], dn[idx[1]], dn[idx[2]]});
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::vector<Automorphism> vertex_stabilizer(Vertex v) { return vertex_maps(v, v); }

}  // namespace hexid
