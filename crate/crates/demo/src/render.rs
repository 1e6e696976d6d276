//! Pure SVG rendering of graphs with part-colored vertices. Everything
//! here is plain string work so it can be exercised natively; the wasm
//! layer just forwards strings.

use ttrans::graph::Graph;
use ttrans::partition::VertexPartition;

const PALETTE: [&str; 10] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#76b7b2", "#edc948", "#ff9da7",
    "#9c755f", "#bab0ac",
];

const NODE_R: f64 = 13.0;

#[derive(Clone, Copy)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// Vertices on a circle, ascending by id from the top.
pub fn circular_layout(n: usize) -> Vec<Point> {
    let radius = 40.0 + 14.0 * n as f64;
    (0..n)
        .map(|v| {
            let angle = std::f64::consts::TAU * v as f64 / n.max(1) as f64
                - std::f64::consts::FRAC_PI_2;
            Point {
                x: radius * angle.cos(),
                y: radius * angle.sin(),
            }
        })
        .collect()
}

/// Layered drawing of a tree: depth sets the row, leaves are spread
/// left to right and inner vertices sit above the mean of their
/// children.
pub fn tree_layout(g: &Graph, root: usize) -> Vec<Point> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut order = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
            }
        }
    }
    let mut x = vec![0.0f64; n];
    let mut next_leaf_x = 0.0f64;
    let mut child_count = vec![0usize; n];
    for &v in order.iter().skip(1) {
        child_count[parent[v]] += 1;
    }
    // Reverse BFS: children before parents.
    for &v in order.iter().rev() {
        if child_count[v] == 0 {
            x[v] = next_leaf_x;
            next_leaf_x += 60.0;
        } else {
            let (sum, cnt) = order
                .iter()
                .filter(|&&w| parent[w] == v)
                .fold((0.0, 0usize), |(s, c), &w| (s + x[w], c + 1));
            x[v] = sum / cnt as f64;
        }
    }
    (0..n)
        .map(|v| Point {
            x: x[v],
            y: depth[v] as f64 * 80.0,
        })
        .collect()
}

/// Split graphs: the clique spread along the bottom row, the
/// independent side along the top.
pub fn split_layout(n: usize, clique: &[usize]) -> Vec<Point> {
    let in_clique = |v: usize| clique.binary_search(&v).is_ok();
    let s_count = n - clique.len();
    let width = 80.0 * (clique.len().max(s_count).max(1) as f64 - 1.0);
    let mut points = vec![Point { x: 0.0, y: 0.0 }; n];
    let place_row = |members: Vec<usize>, y: f64, points: &mut Vec<Point>| {
        let m = members.len();
        for (i, v) in members.into_iter().enumerate() {
            let x = if m <= 1 {
                width / 2.0
            } else {
                width * i as f64 / (m - 1) as f64
            };
            points[v] = Point { x, y };
        }
    };
    place_row((0..n).filter(|&v| in_clique(v)).collect(), 160.0, &mut points);
    place_row((0..n).filter(|&v| !in_clique(v)).collect(), 0.0, &mut points);
    points
}

pub fn part_color(part: usize) -> &'static str {
    PALETTE[(part - 1) % PALETTE.len()]
}

/// Draws the graph; `part_of` gives the 1-based part index coloring
/// each vertex (0 = unassigned gray).
pub fn render_svg(g: &Graph, layout: &[Point], part_of: &[usize]) -> String {
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in layout {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let pad = NODE_R + 28.0;
    let (min_x, min_y) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + pad, max_y - min_y + pad);

    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.1} {:.1} {:.1} {:.1}" font-family="sans-serif">"#,
        min_x, min_y, w, h
    );
    for (u, v) in g.edges() {
        svg.push_str(&format!(
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#9aa4ad" stroke-width="1.6"/>"##,
            layout[u].x, layout[u].y, layout[v].x, layout[v].y
        ));
    }
    for (v, pos) in layout.iter().enumerate().take(g.vertex_count()) {
        let part = part_of.get(v).copied().unwrap_or(0);
        let fill = if part == 0 { "#d0d4d9" } else { part_color(part) };
        svg.push_str(&format!(
            r##"<circle cx="{:.1}" cy="{:.1}" r="{NODE_R}" fill="{fill}" stroke="#2f3437" stroke-width="1.2"/>"##,
            pos.x, pos.y
        ));
        svg.push_str(&format!(
            r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" dominant-baseline="central" font-size="11" fill="#fff">{v}</text>"##,
            pos.x, pos.y
        ));
        if part > 0 {
            svg.push_str(&format!(
                r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="10" fill="#2f3437">V{part}</text>"##,
                pos.x,
                pos.y + NODE_R + 12.0
            ));
        }
    }
    svg.push_str("</svg>");
    svg
}

/// Vertex -> 1-based part index from a partition.
pub fn membership(p: &VertexPartition, n: usize) -> Vec<usize> {
    let mut out = vec![0usize; n];
    for (idx, part) in p.parts().iter().enumerate() {
        for &v in part {
            out[v] = idx + 1;
        }
    }
    out
}
