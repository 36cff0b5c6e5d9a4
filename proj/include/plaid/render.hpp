#ifndef PLAID_RENDER_HPP
#define PLAID_RENDER_HPP

#include "intertwiner.hpp"
#include "quasi_iso.hpp"

#include <ostream>

namespace plaid {

enum class Layer { Plaid, Graph, GridPoints, Catches, Labels };

inline Layer parse_layer(const std::string& s) {
    if (s == "plaid") return Layer::Plaid;
    if (s == "graph") return Layer::Graph;
    if (s == "grid-points") return Layer::GridPoints;
    if (s == "catches") return Layer::Catches;
    if (s == "labels") return Layer::Labels;
    throw Error("ParseError", "unknown layer " + s);
}

struct Region {
    long x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool empty() const { return x1 <= x0 || y1 <= y0; }
};

struct RenderSpec {
    Param param;
    Region region;
    std::set<Layer> layers;
    Rat pitch = 12;  // pixels per unit square
    Rat stroke = 1;
    void validate() const {
        if (region.empty()) throw Error("OutOfRange", "empty render region");
        if (layers.empty()) throw Error("OutOfRange", "no layers selected");
        if (pitch <= 0 || stroke <= 0) throw Error("OutOfRange", "pitch and stroke must be positive");
    }
};

/// Decimal string of r rounded to the nearest multiple of 1e-9 (ties away from zero), trailing zeros dropped.
inline std::string decimal9(const Rat& r) {
    static const Int scale("1000000000");
    Rat s = abs(r) * scale;
    Int n = floor_rat(s + Rat(1, 2));
    bool neg = r < 0 && n != 0;
    Int ip = n / scale, fp = n % scale;
    std::string out = (neg ? "-" : "") + ip.get_str();
    if (fp != 0) {
        std::string f = fp.get_str();
        f.insert(0, 9 - f.size(), '0');
        while (f.back() == '0') f.pop_back();
        out += "." + f;
    }
    return out;
}

namespace detail {

class SvgWriter {
public:
    SvgWriter(std::ostream& os, const RenderSpec& s) : os_(os), s_(s) {}

    std::string X(const Rat& x) const { return decimal9((x - s_.region.x0) * s_.pitch); }
    std::string Y(const Rat& y) const { return decimal9((s_.region.y1 - y) * s_.pitch); }

    void polyline(const std::vector<RVec>& pts, bool closed) {
        os_ << (closed ? "<polygon" : "<polyline") << " points=\"";
        for (std::size_t k = 0; k < pts.size(); ++k) os_ << (k ? " " : "") << X(pts[k][0]) << "," << Y(pts[k][1]);
        os_ << "\"/>\n";
    }
    void dot(const RVec& v, const Rat& r) { os_ << "<circle cx=\"" << X(v[0]) << "\" cy=\"" << Y(v[1]) << "\" r=\"" << decimal9(r) << "\"/>\n"; }
    void rect(long i, long j) {
        os_ << "<rect x=\"" << X(Rat(i)) << "\" y=\"" << Y(Rat(j + 1)) << "\" width=\"" << decimal9(s_.pitch) << "\" height=\""
            << decimal9(s_.pitch) << "\"/>\n";
    }
    void text(const RVec& v, const std::string& t) {
        os_ << "<text x=\"" << X(v[0]) << "\" y=\"" << Y(v[1]) << "\">" << t << "</text>\n";
    }

private:
    std::ostream& os_;
    const RenderSpec& s_;
};

inline bool in_region(const Region& g, const RVec& v) { return v[0] >= g.x0 && v[0] <= g.x1 && v[1] >= g.y0 && v[1] <= g.y1; }

}  // namespace detail

/// Writes an SVG 1.1 document: black plaid polygons over grey graph polygons, y axis pointing up in model space.
inline void render_svg(std::ostream& os, const BlockModel& M, const RenderSpec& spec) {
    spec.validate();
    const Region& g = spec.region;
    detail::SvgWriter w(os, spec);
    const Rat width = (g.x1 - g.x0) * spec.pitch, height = (g.y1 - g.y0) * spec.pitch;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << decimal9(width) << "\" height=\"" << decimal9(height)
       << "\" viewBox=\"0 0 " << decimal9(width) << " " << decimal9(height) << "\">\n";
    os << "<title>p/q = " << spec.param.name() << ", [" << g.x0 << "," << g.x1 << "]x[" << g.y0 << "," << g.y1 << "]</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto on = [&](Layer l) { return spec.layers.count(l) != 0; };

    if (on(Layer::Catches)) {
        os << "<g id=\"catches\" fill=\"#f4c7c3\" stroke=\"none\">\n";
        for (long i = g.x0; i < g.x1; ++i)
            for (long j = g.y0; j < g.y1; ++j)
                if (classify_square(M, {i, j}).status == SquareStatus::Bad) w.rect(i, j);
        os << "</g>\n";
    }
    if (on(Layer::Graph)) {
        os << "<g id=\"graph\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << decimal9(spec.stroke * 2) << "\">\n";
        for (auto& c : graph_family(M, g.x0, g.x1, g.y0, g.y1).components) w.polyline(c.pts, c.closed);
        os << "</g>\n";
    }
    if (on(Layer::Plaid)) {
        os << "<g id=\"plaid\" fill=\"none\" stroke=\"black\" stroke-width=\"" << decimal9(spec.stroke) << "\">\n";
        for (auto& c : plaid_family(M, g.x0, g.x1, g.y0, g.y1).components) w.polyline(c.pts, c.closed);
        os << "</g>\n";
    }
    if (on(Layer::GridPoints)) {
        os << "<g id=\"grid-points\" fill=\"#1f4e9c\" stroke=\"none\">\n";
        for (auto& mn : grid_points_in_box(M.T(), Rat(g.x0), Rat(g.x1), Rat(g.y0), Rat(g.y1))) {
            RVec v = M.point(mn);
            if (detail::in_region(g, v)) w.dot(v, spec.pitch / 8);
        }
        os << "</g>\n";
    }
    if (on(Layer::Labels)) {
        os << "<g id=\"labels\" font-family=\"monospace\" font-size=\"" << decimal9(spec.pitch / 4) << "\" fill=\"#1f4e9c\">\n";
        for (auto& mn : grid_points_in_box(M.T(), Rat(g.x0), Rat(g.x1), Rat(g.y0), Rat(g.y1))) {
            RVec v = M.point(mn);
            if (detail::in_region(g, v)) w.text(v, "(" + std::to_string(mn[0]) + "," + std::to_string(mn[1]) + ")");
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Line-oriented data exports.

/// `i j label` for every nontrivial plaid square of the region.
inline void write_plaid_tiles(std::ostream& os, const BlockModel& M, const Region& g) {
    os << "# plaid tiles p/q = " << M.param().name() << " region " << g.x0 << " " << g.x1 << " " << g.y0 << " " << g.y1 << "\n";
    os << "# i j label\n";
    for (long i = g.x0; i < g.x1; ++i)
        for (long j = g.y0; j < g.y1; ++j) {
            const PlaidLabel& l = M.tile({i, j});
            if (!l.empty()) os << i << " " << j << " " << l.str() << "\n";
        }
}

/// `(m,n) (i+,j+) (i-,j-) x y` for every grid point whose image lies in the region, in (m,n) order.
inline void write_graph_edges(std::ostream& os, const BlockModel& M, const Region& g) {
    os << "# arithmetic graph p/q = " << M.param().name() << " region " << g.x0 << " " << g.x1 << " " << g.y0 << " " << g.y1 << "\n";
    os << "# (m,n) (i+,j+) (i-,j-) x y\n";
    const Param& pr = M.param();
    auto pts = grid_points_in_box(M.T(), Rat(g.x0), Rat(g.x1), Rat(g.y0), Rat(g.y1));
    std::sort(pts.begin(), pts.end());
    for (auto& mn : pts) {
        RVec v = M.point(mn);
        if (v[0] < g.x0 || v[0] >= g.x1 || v[1] < g.y0 || v[1] >= g.y1) continue;
        auto e = edge_assignment(pr, mn[0], mn[1]);
        os << edge_str({mn[0], mn[1]}) << " " << edge_str(e.plus) << " " << edge_str(e.minus) << " " << v[0] << " " << v[1] << "\n";
    }
}

inline std::vector<IntegerPolytope> plaid_cell_table() {
    std::vector<IntegerPolytope> out;
    for (auto& c : plaid_partition().cells()) out.push_back(c.geom);
    return out;
}

inline std::vector<IntegerPolytope> graph_cell_table() {
    std::vector<IntegerPolytope> out;
    for (const GraphPartition* G : {&graph_plus(), &graph_minus()})
        for (auto& c : G->cells()) out.push_back(c.geom);
    return out;
}

/// RTP cells in correspondence order; label is `code:type`.
inline std::vector<IntegerPolytope> rtp_table(const std::vector<CorrespondenceEntry>& ents) {
    std::vector<IntegerPolytope> out;
    for (auto& e : ents) out.push_back(to_integer(e.tri.hv, std::to_string(e.k), e.tri.code + ":" + std::to_string(e.orientation_type), 60));
    return out;
}

}  // namespace plaid

#endif  // PLAID_RENDER_HPP
