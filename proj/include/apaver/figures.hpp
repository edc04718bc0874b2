#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "apaver/lattice.hpp"
#include "apaver/paving.hpp"

namespace apaver::figures {

// Apartment-to-picture mapping used by every figure: x grows against s + t
// (so the triangle's vertical edge sits on the left), y grows against t - s.
// The 15 : 26 unit ratio approximates the sqrt(3) of the hexagonal lattice
// with integers, keeping output byte-stable across platforms.
struct Layout {
  int N;
  static constexpr int ux = 15;
  static constexpr int uy = 26;
  static constexpr int margin = 40;

  explicit Layout(int N_) : N(N_) {}
  int px(Vertex v) const { return margin + (N - (v.s + v.t)) * ux; }
  int py(Vertex v) const { return margin + (N - (v.t - v.s)) * uy; }
  // wide enough for the type legend even at tiny N
  int width() const { return std::max(2 * margin + 3 * N * ux, 440); }
  int height() const { return 2 * margin + 2 * N * uy + 30; }
};

inline const char* type_color(VertexType ty) {
  switch (ty) {
    case VertexType::base_point: return "#000000";
    case VertexType::t1: return "#e6194b";
    case VertexType::t2: return "#3cb44b";
    case VertexType::t3: return "#d4a017";
    case VertexType::t4: return "#4363d8";
    case VertexType::t5: return "#f58231";
    case VertexType::t6: return "#911eb4";
    case VertexType::t7: return "#2bb5b8";
    case VertexType::t8: return "#f032e6";
    case VertexType::t9: return "#7a9e1a";
    case VertexType::t10: return "#a0522d";
    case VertexType::t11: return "#008080";
    case VertexType::t12: return "#8073d6";
  }
  return "#000000";
}

namespace detail {

inline std::string num(int v) { return std::to_string(v); }

inline std::string svg_open(const Layout& L) {
  std::string w = num(L.width()), h = num(L.height());
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + w + " " + h +
         "\" width=\"" + w + "\" height=\"" + h + "\">\n" +
         "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"#ffffff\"/>\n";
}

inline std::string line(int x1, int y1, int x2, int y2, const std::string& stroke, int width) {
  return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
         num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

inline std::string dot(int x, int y, int r, const std::string& fill) {
  return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\" fill=\"" +
         fill + "\"/>\n";
}

inline std::string text(int x, int y, const std::string& body, int size,
                        const std::string& anchor = "middle") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"" +
         num(size) + "\" text-anchor=\"" + anchor + "\">" + body + "</text>\n";
}

// Lattice grid restricted to Delta_N: for each line of the three reflection
// families, a segment between the extreme vertices of the triangle on it.
inline std::string grid(const Layout& L) {
  std::string out;
  auto vs = triangle_vertices(L.N);
  std::map<int, std::pair<Vertex, Vertex>> by_s, by_t, by_d;
  auto extend = [](std::map<int, std::pair<Vertex, Vertex>>& fam, int key, Vertex v,
                   auto higher) {
    auto it = fam.find(key);
    if (it == fam.end()) {
      fam.emplace(key, std::make_pair(v, v));
    } else {
      if (higher(it->second.first, v)) it->second.first = v;
      if (higher(v, it->second.second)) it->second.second = v;
    }
  };
  for (Vertex v : vs) {
    extend(by_s, v.s, v, [](Vertex a, Vertex b) { return a.t > b.t; });
    extend(by_t, v.t, v, [](Vertex a, Vertex b) { return a.s > b.s; });
    extend(by_d, v.t - v.s, v, [](Vertex a, Vertex b) { return a.s > b.s; });
  }
  for (auto* fam : {&by_s, &by_t, &by_d}) {
    for (auto& [key, seg] : *fam) {
      (void)key;
      if (seg.first == seg.second) continue;
      out += line(L.px(seg.first), L.py(seg.first), L.px(seg.second), L.py(seg.second),
                  "#dddddd", 1);
    }
  }
  return out;
}

inline std::string caption(const Layout& L, const std::string& body) {
  return text(L.margin, L.height() - 12, body, 12, "start");
}

}  // namespace detail

// Every vertex of Delta_N colored by its type relative to a, with a legend.
inline std::string render_types(int N, int a) {
  Layout L(N);
  std::string out = detail::svg_open(L);
  out += detail::grid(L);
  for (Vertex v : triangle_vertices(N)) {
    out += detail::dot(L.px(v), L.py(v), 4, type_color(classify(v, a)));
  }
  int lx = L.margin;
  int ly = L.height() - 26;
  for (int code = 0; code <= 12; ++code) {
    VertexType ty = static_cast<VertexType>(code);
    out += detail::dot(lx, ly, 4, type_color(ty));
    out += detail::text(lx + 8, ly + 4, code == 0 ? "0" : detail::num(code), 10, "start");
    lx += code == 0 ? 26 : (code >= 10 ? 34 : 28);
  }
  out += detail::caption(L, "types N=" + detail::num(N) + " a=" + detail::num(a));
  return out + "</svg>\n";
}

// Nested ring outlines Delta_1 .. Delta_N over the vertex grid.
inline std::string render_triangles(int N) {
  Layout L(N);
  std::string out = detail::svg_open(L);
  out += detail::grid(L);
  for (int i = 1; i <= N; ++i) {
    auto c = triangle_corners(i);
    std::string pts;
    for (const Vertex& v : c) {
      pts += detail::num(L.px(v)) + "," + detail::num(L.py(v)) + " ";
    }
    pts += detail::num(L.px(c[0])) + "," + detail::num(L.py(c[0]));
    out += "<polyline points=\"" + pts +
           "\" fill=\"none\" stroke=\"#4363d8\" stroke-width=\"1\"/>\n";
  }
  for (Vertex v : triangle_vertices(N)) out += detail::dot(L.px(v), L.py(v), 3, "#333333");
  for (int i = 1; i <= N; ++i) {
    Vertex apex{-i, -i};
    out += detail::text(L.px(apex) + 10, L.py(apex) + 4, detail::num(i), 10, "start");
  }
  out += detail::caption(L, "triangles N=" + detail::num(N));
  return out + "</svg>\n";
}

// All level-a jumps available inside Delta_N: an arrow from each moving
// vertex to each vertex its points can land on, one per leading valuation.
inline std::string render_movement(int N, int a) {
  Layout L(N);
  std::string out = detail::svg_open(L);
  out += "<defs><marker id=\"arrow\" viewBox=\"0 0 6 6\" refX=\"5\" refY=\"3\" "
         "markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#e6194b\"/></marker></defs>\n";
  out += detail::grid(L);
  std::string arrows;
  for (Vertex v : triangle_vertices(N)) {
    VertexType ty = classify(v, 0);
    std::vector<Vertex> targets;
    if (ty == VertexType::t1) {
      for (int val = 1; val <= std::min(a, v.t - 1); ++val) {
        int d = v.t - val;
        targets.push_back(Vertex{v.s - d, v.t - 2 * d});
      }
    } else if (ty == VertexType::t7) {
      for (int val = 1; val <= std::min(a, v.s - 1); ++val) {
        int d = v.s - val;
        targets.push_back(Vertex{v.s - 2 * d, v.t - d});
      }
    }
    for (Vertex w : targets) {
      int x1 = L.px(v), y1 = L.py(v), x2 = L.px(w), y2 = L.py(w);
      // control point off the chord so stacked jumps stay distinguishable
      int cx = (x1 + x2) / 2 - (y2 - y1) / 4;
      int cy = (y1 + y2) / 2 + (x2 - x1) / 4;
      arrows += "<path d=\"M" + detail::num(x1) + "," + detail::num(y1) + " Q" +
                detail::num(cx) + "," + detail::num(cy) + " " + detail::num(x2) + "," +
                detail::num(y2) +
                "\" fill=\"none\" stroke=\"#e6194b\" stroke-width=\"1\" "
                "marker-end=\"url(#arrow)\"/>\n";
    }
  }
  for (Vertex v : triangle_vertices(N)) {
    Region reg = region_of(v);
    out += detail::dot(L.px(v), L.py(v), 3,
                       reg == Region::S ? "#3cb44b" : reg == Region::T ? "#f58231" : "#333333");
  }
  out += arrows;
  out += detail::caption(L, "movement N=" + detail::num(N) + " a=" + detail::num(a));
  return out + "</svg>\n";
}

// Boxed sweep positions: the base point is 0; each ring's vertices are
// numbered 1..3i in sweep order, stage boundaries visible via box color.
inline std::string render_order(int N, int a) {
  Layout L(N);
  std::string out = detail::svg_open(L);
  out += detail::grid(L);
  std::map<int, int> ring_start;
  auto entries = filtration_order(N, a);
  for (const auto& e : entries) {
    if (!ring_start.count(e.triangle)) ring_start[e.triangle] = e.rank;
  }
  for (const auto& e : entries) {
    int x = L.px(e.vertex), y = L.py(e.vertex);
    int label = e.rank - ring_start[e.triangle] + (e.triangle == 0 ? 0 : 1);
    const char* stroke = e.stage == Stage::one    ? "#3cb44b"
                         : e.stage == Stage::two  ? "#4363d8"
                         : e.stage == Stage::three ? "#e6194b"
                                                   : "#000000";
    out += "<rect x=\"" + detail::num(x - 11) + "\" y=\"" + detail::num(y - 9) +
           "\" width=\"22\" height=\"18\" fill=\"#ffffff\" stroke=\"" + stroke +
           "\" stroke-width=\"1\"/>\n";
    out += detail::text(x, y + 4, detail::num(label), 10);
  }
  out += detail::caption(L, "order N=" + detail::num(N) + " a=" + detail::num(a));
  return out + "</svg>\n";
}

}  // namespace apaver::figures
