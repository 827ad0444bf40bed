#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace hexid {

// Brick-wall coordinates for the hexagonal grid: vertices are Z^2, every
// vertex has the two horizontal neighbors and one vertical neighbor whose
// direction depends on the parity of x+y (up when even, down when odd).
struct Vertex {
    long long x = 0;
    long long y = 0;
    auto operator<=>(const Vertex&) const = default;
};

inline Vertex operator+(Vertex a, Vertex b) { return {a.x + b.x, a.y + b.y}; }
inline Vertex operator-(Vertex a, Vertex b) { return {a.x - b.x, a.y - b.y}; }

inline int parity(Vertex v) { return static_cast<int>(((v.x + v.y) % 2 + 2) % 2); }

struct VertexHash {
    size_t operator()(const Vertex& v) const {
        return std::hash<long long>()(v.x * 1000003ll + v.y);
    }
};

std::array<Vertex, 3> neighbors(Vertex v);

// Graph distance by breadth-first search (the defining computation; memoized
// per offset and endpoint parity).
int distance(Vertex u, Vertex v);

// All vertices at distance <= r, sorted. |ball(v,0)| = 1, |ball(v,1)| = 4,
// |ball(v,2)| = 10.
std::vector<Vertex> ball(Vertex v, int r);

// An automorphism of the grid, given by the image of an anchor vertex and a
// bijection of the anchor's neighbors onto the image's neighbors. The rest
// of the map is forced: walking any path, the cyclic order of edges around
// each vertex is carried over with a fixed chirality determined at the
// anchor. Evaluation caches images.
class Automorphism {
public:
    Automorphism(Vertex anchor, Vertex anchor_image,
                 const std::array<Vertex, 3>& nbrs, const std::array<Vertex, 3>& images);

    Vertex operator()(Vertex v) const;
    Vertex anchor() const { return anchor_; }

private:
    Vertex step(Vertex at, Vertex img_at, Vertex in_dir, Vertex img_in_dir, Vertex to) const;
    Vertex extend(Vertex v) const;

    Vertex anchor_, anchor_img_;
    std::array<Vertex, 3> nbrs_, images_;
    int chirality_;  // +1 cyclic order preserved, -1 reversed
    // lazy image cache; copies of an Automorphism share it
    struct Cache {
        std::mutex mu;
        std::unordered_map<Vertex, Vertex, VertexHash> map;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// The 6 automorphisms fixing v (one per permutation of its neighbors).
std::vector<Automorphism> vertex_stabilizer(Vertex v);

// The 6 automorphisms mapping src to dst.
std::vector<Automorphism> vertex_maps(Vertex src, Vertex dst);

}  // namespace hexid
