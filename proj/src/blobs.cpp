#include "bgbench/blobs.hpp"

namespace bgbench {

namespace {

// Union-find over provisional labels, path-halving find.
struct UnionFind {
    std::vector<std::uint32_t> parent{0}; // slot 0 unused

    std::uint32_t make() {
        parent.push_back(static_cast<std::uint32_t>(parent.size()));
        return static_cast<std::uint32_t>(parent.size() - 1);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[b < a ? a : b] = b < a ? b : a;
    }
};

} // namespace

BlobLabeling label_blobs(const ForegroundMask& mask) {
    const int w = mask.width, h = mask.height;
    BlobLabeling out;
    out.width = w;
    out.height = h;
    out.labels.assign(static_cast<std::size_t>(w) * h, 0);

    UnionFind uf;
    std::vector<std::uint32_t> prov(static_cast<std::size_t>(w) * h, 0);

    // First pass: provisional labels, merging with the four already-seen
    // 8-neighbours (W, NW, N, NE).
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.at(r, c))
                continue;
            const std::size_t idx = static_cast<std::size_t>(r) * w + c;
            std::uint32_t label = 0;
            const int prior[4][2] = {{r, c - 1}, {r - 1, c - 1}, {r - 1, c}, {r - 1, c + 1}};
            for (const auto& [nr, nc] : prior) {
                if (nr < 0 || nc < 0 || nc >= w || !mask.at(nr, nc))
                    continue;
                const std::uint32_t nl = prov[static_cast<std::size_t>(nr) * w + nc];
                if (label == 0)
                    label = nl;
                else
                    uf.unite(label, nl);
            }
            if (label == 0)
                label = uf.make();
            prov[idx] = label;
        }
    }

    // Second pass: final labels in row-major first-encounter order of each root.
    std::vector<std::uint32_t> root_to_final(uf.parent.size(), 0);
    for (std::size_t idx = 0; idx < prov.size(); ++idx) {
        if (prov[idx] == 0)
            continue;
        const std::uint32_t root = uf.find(prov[idx]);
        if (root_to_final[root] == 0) {
            root_to_final[root] = static_cast<std::uint32_t>(out.areas.size() + 1);
            out.areas.push_back(0);
        }
        const std::uint32_t final_label = root_to_final[root];
        out.labels[idx] = final_label;
        ++out.areas[final_label - 1];
    }
    return out;
}

ForegroundMask filter_small_blobs(const BlobLabeling& labeling, std::size_t min_area) {
    ForegroundMask out(labeling.width, labeling.height);
    for (std::size_t idx = 0; idx < labeling.labels.size(); ++idx) {
        const std::uint32_t label = labeling.labels[idx];
        if (label != 0 && labeling.areas[label - 1] >= min_area)
            out.bits[idx] = 1;
    }
    return out;
}

} // namespace bgbench
