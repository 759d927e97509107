//! Intersection graphs of curve systems: extraction with edge multiplicities,
//! directional densities at vertices, regularity and cusp parity.

use crate::curve::CORNER_ANGLE;
use crate::error::{Error, Result};
use crate::geom::{project_onto_segment, start_tangent, Vec2};
use crate::varifold::CurveSystem;
use crate::winding::odd_multiplicity_field;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;

/// Default snapping tolerance relative to the bounding-box diagonal.
pub const SNAP_TOL_REL: f64 = 1e-6;
/// Default angular tolerance for grouping tangent directions modulo sign.
pub const ANGULAR_TOL: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    /// End vertices; `None` for a closed loop without vertices.
    pub a: Option<usize>,
    pub b: Option<usize>,
    pub points: Vec<Vec2>,
    pub multiplicity: u32,
    /// Unit tangents pointing away from `a` and away from `b` along the edge.
    pub tangent_a: Vec2,
    pub tangent_b: Vec2,
}

impl GraphEdge {
    pub fn is_closed_loop(&self) -> bool {
        self.a.is_none()
    }

    /// Point halfway along the chain by arclength.
    pub fn midpoint(&self) -> Vec2 {
        let total: f64 = self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum();
        let mut acc = 0.0;
        for w in self.points.windows(2) {
            let l = (w[1] - w[0]).norm();
            if acc + l >= 0.5 * total && l > 0.0 {
                return w[0].lerp(w[1], (0.5 * total - acc) / l);
            }
            acc += l;
        }
        self.points[0]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarGraph {
    pub vertices: Vec<Vec2>,
    pub edges: Vec<GraphEdge>,
    pub snap_tol: f64,
}

/// One edge end at a vertex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeEnd {
    pub edge: usize,
    pub tangent: Vec2,
    pub multiplicity: u32,
}

impl PlanarGraph {
    /// All edge ends at vertex `v`; a self-loop contributes two.
    pub fn edge_ends(&self, v: usize) -> Vec<EdgeEnd> {
        let mut out = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            if e.a == Some(v) {
                out.push(EdgeEnd {
                    edge: k,
                    tangent: e.tangent_a,
                    multiplicity: e.multiplicity,
                });
            }
            if e.b == Some(v) {
                out.push(EdgeEnd {
                    edge: k,
                    tangent: e.tangent_b,
                    multiplicity: e.multiplicity,
                });
            }
        }
        out
    }

    /// `ρ_G(v)`: summed multiplicity of the edge ends at `v`.
    pub fn local_density(&self, v: usize) -> u32 {
        self.edge_ends(v).iter().map(|e| e.multiplicity).sum()
    }
}

/// A direction class at a vertex with its two one-sided densities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionDensity {
    /// Representative unit vector, angle in `[0, π)`.
    pub direction: Vec2,
    /// Multiplicity of the ends whose outgoing tangent points against `direction`.
    pub rho_plus: u32,
    /// Multiplicity of the ends whose outgoing tangent points along `direction`.
    pub rho_minus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDirectionalReport {
    pub vertex: usize,
    pub position: Vec2,
    pub directions: Vec<DirectionDensity>,
    pub local_density: u32,
}

impl VertexDirectionalReport {
    pub fn is_balanced(&self) -> bool {
        self.directions.iter().all(|d| d.rho_plus == d.rho_minus)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Imbalance {
    pub vertex: usize,
    pub position: Vec2,
    pub direction: Vec2,
    pub rho_plus: u32,
    pub rho_minus: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub offending: Vec<Imbalance>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    /// Whether the input graph was regular; if not, the remaining fields are vacuous.
    pub regular: bool,
    /// Edge multiplicities of the halved graph (zero means dropped).
    pub halved: Vec<u32>,
    /// Vertices of odd local density in the halved graph: the predicted cusps.
    pub odd_vertices: Vec<usize>,
    pub odd_positions: Vec<Vec2>,
    pub even_count: bool,
    /// Edges where the supplied odd/even flag disagrees with the multiplicity parity.
    pub marking_mismatches: Vec<usize>,
}

struct Piece {
    a: usize,
    b: usize,
    /// Curve index, segment index and parameters of the piece ends on that segment.
    curve: usize,
    seg: usize,
    t0: f64,
    t1: f64,
    weight: u32,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Parameters in the open interval `(0,1)` of segment `a→b` where it meets
/// segment `c→d`: a proper crossing, or an endpoint of `c→d` lying on it.
fn split_params(a: Vec2, b: Vec2, c: Vec2, d: Vec2, snap: f64, out: &mut Vec<f64>) {
    let r = b - a;
    let s = d - c;
    let len = r.norm();
    let interior = |t: f64| t * len > snap && (1.0 - t) * len > snap;
    let denom = r.cross(s);
    if denom.abs() > 1e-12 * len * s.norm() {
        let t = (c - a).cross(s) / denom;
        let u = (c - a).cross(r) / denom;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) && interior(t) {
            out.push(t);
        }
    }
    for q in [c, d] {
        let t = project_onto_segment(q, a, b);
        if interior(t) && (a.lerp(b, t) - q).norm() <= snap {
            out.push(t);
        }
    }
}

/// Builds the intersection graph. `snap_tol` defaults to
/// [`SNAP_TOL_REL`] times the bounding-box diagonal.
pub fn extract_graph(system: &CurveSystem, snap_tol: Option<f64>) -> Result<PlanarGraph> {
    let snap = snap_tol.unwrap_or(SNAP_TOL_REL * system.diameter());
    if !(snap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "snap tolerance must be > 0, got {snap}"
        )));
    }
    let curves = system.curves();

    // all segments with their owners
    let mut segs = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let nodes = c.nodes();
        let n = nodes.len();
        for k in 0..n {
            segs.push((ci, k, nodes[k], nodes[(k + 1) % n]));
        }
    }

    // split parameters from a sweep over x
    let mut order: Vec<usize> = (0..segs.len()).collect();
    let min_x = |i: usize| segs[i].2.x.min(segs[i].3.x);
    let max_x = |i: usize| segs[i].2.x.max(segs[i].3.x);
    order.sort_by(|&i, &j| min_x(i).total_cmp(&min_x(j)));
    let mut splits: Vec<Vec<f64>> = vec![Vec::new(); segs.len()];
    for (pos, &i) in order.iter().enumerate() {
        let (_, _, a, b) = segs[i];
        let (ylo, yhi) = (a.y.min(b.y) - snap, a.y.max(b.y) + snap);
        for &j in &order[pos + 1..] {
            if min_x(j) > max_x(i) + snap {
                break;
            }
            let (_, _, c, d) = segs[j];
            if c.y.max(d.y) < ylo || c.y.min(d.y) > yhi {
                continue;
            }
            split_params(a, b, c, d, snap, &mut splits[i]);
            split_params(c, d, a, b, snap, &mut splits[j]);
        }
    }

    // pieces and their end points
    let mut points: Vec<Vec2> = Vec::new();
    let mut is_node: Vec<bool> = Vec::new();
    let mut raw = Vec::new();
    for (si, &(ci, k, a, b)) in segs.iter().enumerate() {
        let mut ts = std::mem::take(&mut splits[si]);
        ts.push(0.0);
        ts.push(1.0);
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|x, y| (*x - *y) * (b - a).norm() <= snap * 1e-3);
        for w in ts.windows(2) {
            let ia = points.len();
            points.push(if w[0] == 0.0 { a } else { a.lerp(b, w[0]) });
            is_node.push(w[0] == 0.0);
            let ib = points.len();
            points.push(if w[1] == 1.0 { b } else { a.lerp(b, w[1]) });
            is_node.push(w[1] == 1.0);
            raw.push((ia, ib, ci, k, w[0], w[1]));
        }
    }

    // cluster end points within snap
    let mut uf = UnionFind((0..points.len()).collect());
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let key = |p: Vec2| ((p.x / snap).floor() as i64, (p.y / snap).floor() as i64);
    for (i, p) in points.iter().enumerate() {
        let (kx, ky) = key(*p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(list) = buckets.get(&(kx + dx, ky + dy)) {
                    for &j in list {
                        if (points[j] - *p).norm() <= snap {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        buckets.entry((kx, ky)).or_default().push(i);
    }
    let mut cluster_of = vec![usize::MAX; points.len()];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut root_index: HashMap<usize, usize> = HashMap::new();
    for i in 0..points.len() {
        let r = uf.find(i);
        let idx = *root_index.entry(r).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        cluster_of[i] = idx;
        members[idx].push(i);
    }
    let mut cluster_pos = Vec::with_capacity(members.len());
    for m in &members {
        let far = m.iter().any(|&i| {
            m.iter()
                .any(|&j| (points[i] - points[j]).norm() > 2.0 * snap)
        });
        if far {
            let list: Vec<String> = m
                .iter()
                .take(8)
                .map(|&i| format!("({:.6}, {:.6})", points[i].x, points[i].y))
                .collect();
            return Err(Error::AmbiguousJunction(format!(
                "{} points chained beyond 2×snap_tol: {}",
                m.len(),
                list.join(", ")
            )));
        }
        let rep = m.iter().copied().find(|&i| is_node[i]).unwrap_or(m[0]);
        cluster_pos.push(points[rep]);
    }

    // merge coincident pieces; straight pieces between the same clusters coincide
    let mut merged: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut pieces: Vec<Piece> = Vec::new();
    for &(ia, ib, ci, k, t0, t1) in &raw {
        let (ca, cb) = (cluster_of[ia], cluster_of[ib]);
        if ca == cb {
            continue;
        }
        let w = curves[ci].weight();
        let key = (ca.min(cb), ca.max(cb));
        if let Some(&p) = merged.get(&key) {
            pieces[p].weight += w;
        } else {
            merged.insert(key, pieces.len());
            pieces.push(Piece {
                a: ca,
                b: cb,
                curve: ci,
                seg: k,
                t0,
                t1,
                weight: w,
            });
        }
    }

    // vertices: degree != 2, multiplicity change, or a corner node
    let nc = cluster_pos.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nc];
    for (pi, p) in pieces.iter().enumerate() {
        incident[p.a].push(pi);
        incident[p.b].push(pi);
    }
    let mut corner_cluster = vec![false; nc];
    for (ci, c) in curves.iter().enumerate() {
        for k in c.corner_nodes(CORNER_ANGLE) {
            // the start point of the first piece of segment k is node k
            if let Some(&(ia, ..)) = raw.iter().find(|r| r.2 == ci && r.3 == k && r.4 == 0.0) {
                corner_cluster[cluster_of[ia]] = true;
            }
        }
    }
    let mut vertex_of = vec![None; nc];
    let mut vertices = Vec::new();
    for c in 0..nc {
        let inc = &incident[c];
        let is_vertex =
            inc.len() != 2 || pieces[inc[0]].weight != pieces[inc[1]].weight || corner_cluster[c];
        if is_vertex && !inc.is_empty() {
            vertex_of[c] = Some(vertices.len());
            vertices.push(cluster_pos[c]);
        }
    }

    // walk chains between vertices
    let mut used = vec![false; pieces.len()];
    let mut edges = Vec::new();
    let walk =
        |start_cluster: usize, first: usize, used: &mut Vec<bool>| -> (Vec<usize>, Vec<usize>) {
            let mut clusters = vec![start_cluster];
            let mut chain = Vec::new();
            let mut cur = start_cluster;
            let mut piece = first;
            loop {
                used[piece] = true;
                chain.push(piece);
                let p = &pieces[piece];
                let next = if p.a == cur { p.b } else { p.a };
                clusters.push(next);
                if vertex_of[next].is_some() || next == start_cluster {
                    break;
                }
                match incident[next].iter().copied().find(|&q| !used[q]) {
                    Some(q) => {
                        piece = q;
                        cur = next;
                    }
                    None => break,
                }
            }
            (clusters, chain)
        };
    let mut starts: Vec<usize> = (0..nc).filter(|&c| vertex_of[c].is_some()).collect();
    starts.sort_by_key(|&c| vertex_of[c]);
    for &c in &starts {
        for &pi in &incident[c] {
            if used[pi] {
                continue;
            }
            let (clusters, chain) = walk(c, pi, &mut used);
            edges.push(make_edge(
                &clusters,
                &chain,
                &pieces,
                &cluster_pos,
                &vertex_of,
                system,
                true,
            ));
        }
    }
    for pi in 0..pieces.len() {
        if !used[pi] {
            let (clusters, chain) = walk(pieces[pi].a, pi, &mut used);
            edges.push(make_edge(
                &clusters,
                &chain,
                &pieces,
                &cluster_pos,
                &vertex_of,
                system,
                false,
            ));
        }
    }
    Ok(PlanarGraph {
        vertices,
        edges,
        snap_tol: snap,
    })
}

fn make_edge(
    clusters: &[usize],
    chain: &[usize],
    pieces: &[Piece],
    pos: &[Vec2],
    vertex_of: &[Option<usize>],
    system: &CurveSystem,
    has_vertices: bool,
) -> GraphEdge {
    let points: Vec<Vec2> = clusters.iter().map(|&c| pos[c]).collect();
    let m = pieces[chain[0]].weight;
    let tangent_a = end_tangent(&points, &pieces[chain[0]], clusters[0], system);
    let rev: Vec<Vec2> = points.iter().rev().copied().collect();
    let tangent_b = end_tangent(
        &rev,
        &pieces[*chain.last().unwrap()],
        *clusters.last().unwrap(),
        system,
    );
    GraphEdge {
        a: if has_vertices {
            vertex_of[clusters[0]]
        } else {
            None
        },
        b: if has_vertices {
            vertex_of[*clusters.last().unwrap()]
        } else {
            None
        },
        points,
        multiplicity: m,
        tangent_a,
        tangent_b,
    }
}

/// Outgoing tangent at the start of `pts`. A vertex inside an original
/// segment takes that segment's direction; a vertex at a node interpolates
/// the following chain points.
fn end_tangent(pts: &[Vec2], first: &Piece, start_cluster: usize, system: &CurveSystem) -> Vec2 {
    let at_start = first.a == start_cluster;
    let t = if at_start { first.t0 } else { first.t1 };
    if t > 0.0 && t < 1.0 {
        let nodes = system.curves()[first.curve].nodes();
        let n = nodes.len();
        let d = (nodes[(first.seg + 1) % n] - nodes[first.seg]).normalized();
        return if (pts[1] - pts[0]).dot(d) >= 0.0 {
            d
        } else {
            -d
        };
    }
    start_tangent(&pts[..pts.len().min(4)])
}

/// Groups the edge ends at `v` by direction modulo sign and sums the
/// multiplicities on both sides of each direction.
pub fn directional_densities(
    graph: &PlanarGraph,
    v: usize,
    angular_tol: f64,
) -> Result<VertexDirectionalReport> {
    if v >= graph.vertices.len() {
        return Err(Error::InvalidParameter(format!("no vertex {v}")));
    }
    let ends = graph.edge_ends(v);
    let mut items: Vec<(f64, EdgeEnd)> = ends
        .iter()
        .map(|e| {
            let mut a = e.tangent.angle().rem_euclid(PI);
            if a >= PI {
                a -= PI;
            }
            (a, *e)
        })
        .collect();
    items.sort_by(|x, y| x.0.total_cmp(&y.0));
    // single-linkage groups; the wrap-around at π joins the last and first group
    let mut groups: Vec<Vec<(f64, EdgeEnd)>> = Vec::new();
    for it in items {
        match groups.last_mut() {
            Some(g) if it.0 - g.last().unwrap().0 <= angular_tol => g.push(it),
            _ => groups.push(vec![it]),
        }
    }
    if groups.len() > 1 {
        let first = groups[0][0].0;
        let last = groups.last().unwrap().last().unwrap().0;
        if first + PI - last <= angular_tol {
            let tail = groups.pop().unwrap();
            let head = &mut groups[0];
            let mut merged: Vec<(f64, EdgeEnd)> =
                tail.into_iter().map(|(a, e)| (a - PI, e)).collect();
            merged.append(head);
            *head = merged;
        }
    }
    let mut directions = Vec::new();
    for g in &groups {
        let spread = g.last().unwrap().0 - g[0].0;
        if spread > 2.0 * angular_tol {
            return Err(Error::AmbiguousDirection {
                vertex: v,
                detail: format!("{} tangents spread over {:.3e} rad", g.len(), spread),
            });
        }
        let mean = g.iter().map(|x| x.0).sum::<f64>() / g.len() as f64;
        let w = Vec2::from_angle(mean.rem_euclid(PI));
        let (mut plus, mut minus) = (0, 0);
        for (_, e) in g {
            if e.tangent.dot(w) < 0.0 {
                plus += e.multiplicity;
            } else {
                minus += e.multiplicity;
            }
        }
        directions.push(DirectionDensity {
            direction: w,
            rho_plus: plus,
            rho_minus: minus,
        });
    }
    Ok(VertexDirectionalReport {
        vertex: v,
        position: graph.vertices[v],
        directions,
        local_density: graph.local_density(v),
    })
}

/// True iff every vertex balances every direction.
pub fn is_regular(graph: &PlanarGraph, angular_tol: f64) -> Result<RegularityVerdict> {
    let mut offending = Vec::new();
    for v in 0..graph.vertices.len() {
        let rep = directional_densities(graph, v, angular_tol)?;
        for d in &rep.directions {
            if d.rho_plus != d.rho_minus {
                offending.push(Imbalance {
                    vertex: v,
                    position: rep.position,
                    direction: d.direction,
                    rho_plus: d.rho_plus,
                    rho_minus: d.rho_minus,
                });
            }
        }
    }
    let regular = offending.is_empty();
    let message = if regular {
        "regular: every direction balances".to_string()
    } else {
        let mut vs: Vec<usize> = offending.iter().map(|o| o.vertex).collect();
        vs.dedup();
        format!(
            "irregular vertices: {}; relaxed energy infinite (p-polygon)",
            vs.len()
        )
    };
    Ok(RegularityVerdict {
        regular,
        offending,
        message,
    })
}

/// Odd/even flag per edge from the odd-multiplicity field at edge midpoints.
pub fn boundary_marking(system: &CurveSystem, graph: &PlanarGraph) -> Vec<bool> {
    graph
        .edges
        .iter()
        .map(|e| !odd_multiplicity_field(system, &[e.midpoint()], graph.snap_tol).is_empty())
        .collect()
}

/// Halves the multiplicities (`m/2` for even, `(m-1)/2` for odd edges) and
/// lists the vertices of odd local density in the halved graph.
pub fn cusp_parity_check(
    graph: &PlanarGraph,
    marking: &[bool],
    angular_tol: f64,
) -> Result<CuspReport> {
    if marking.len() != graph.edges.len() {
        return Err(Error::InvalidParameter(
            "one marking flag per edge is required".into(),
        ));
    }
    let regular = is_regular(graph, angular_tol)?.regular;
    let halved: Vec<u32> = graph.edges.iter().map(|e| e.multiplicity / 2).collect();
    let marking_mismatches = graph
        .edges
        .iter()
        .zip(marking)
        .enumerate()
        .filter(|(_, (e, odd))| (e.multiplicity % 2 == 1) != **odd)
        .map(|(k, _)| k)
        .collect();
    let mut density = vec![0u32; graph.vertices.len()];
    for (e, h) in graph.edges.iter().zip(&halved) {
        for v in [e.a, e.b].into_iter().flatten() {
            density[v] += h;
        }
    }
    let odd_vertices: Vec<usize> = (0..density.len())
        .filter(|&v| density[v] % 2 == 1)
        .collect();
    Ok(CuspReport {
        regular,
        halved,
        odd_positions: odd_vertices.iter().map(|&v| graph.vertices[v]).collect(),
        even_count: odd_vertices.len().is_multiple_of(2),
        odd_vertices,
        marking_mismatches,
    })
}
