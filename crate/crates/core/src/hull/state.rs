use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;

use super::stats::{HullStats, StepRecord};
use crate::geometry::{hyperplane_through_homogeneous, AffineSpan, Halfspace, Point, Simplex, Triangulation};
use crate::{Error, Result};

pub type FacetId = usize;
type CellId = usize;

const NONE: usize = usize::MAX;

/// A facet of the current polytope `P_k`.
#[derive(Clone, Debug)]
pub struct Facet {
    pub halfspace: Halfspace,
    /// Inserted points on the facet hyperplane, ascending.
    pub incident: Vec<usize>,
    pub alive: bool,
    /// Boundary cells of the placing triangulation lying in this facet.
    cells: Vec<CellId>,
}

impl Facet {
    pub fn boundary_cells(&self) -> &[usize] {
        &self.cells
    }
}

/// A `(d-1)`-simplex on the boundary of the current polytope and the facet
/// whose hyperplane contains it.
#[derive(Clone, Debug)]
pub struct BoundaryCell {
    pub simplex: Simplex,
    pub owner: FacetId,
    pub alive: bool,
}

/// What happened to a placed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// The point lies in the current polytope; nothing changed.
    Absorbed,
    /// The point was beyond `violated` facets and `new_cells` cells were
    /// coned over them.
    Extended { violated: usize, new_cells: usize },
}

/// One horizon ridge coned to the new point.
struct NewBoundary {
    vertices: Vec<usize>,
    /// Vertex of the retired boundary cell opposite the ridge; strictly
    /// inside the new facet's halfspace.
    inside: usize,
    violated: FacetId,
    neighbor: FacetId,
}

/// Mutable state of the incremental algorithm: the placing triangulation of
/// `P_k`, its facets and the boundary complex linking the two.
#[derive(Clone, Debug)]
pub struct HullState {
    dim: usize,
    points: Vec<Point>,
    hom: Vec<Vec<BigInt>>,
    pending: VecDeque<usize>,
    processed: Vec<usize>,
    facets: Vec<Facet>,
    live: Vec<FacetId>,
    cells: Vec<Simplex>,
    boundary: Vec<BoundaryCell>,
    ridges: HashMap<Vec<usize>, [CellId; 2]>,
    by_plane: HashMap<Halfspace, FacetId>,
    marks: Vec<u32>,
    epoch: u32,
    stats: HullStats,
}

fn without(vertices: &[usize], skip: usize) -> Vec<usize> {
    vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()
}

fn with(vertices: &[usize], extra: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(vertices.len() + 1);
    let at = vertices.partition_point(|&v| v < extra);
    out.extend_from_slice(&vertices[..at]);
    out.push(extra);
    out.extend_from_slice(&vertices[at..]);
    out
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    if let Err(at) = list.binary_search(&v) {
        list.insert(at, v);
    }
}

impl HullState {
    /// Builds the state for the first `d + 1` affinely independent points of
    /// `order`. Points skipped because they do not enlarge the span are
    /// queued first among the remaining points.
    pub fn initial_simplex(points: Vec<Point>, order: &[usize]) -> Result<Self> {
        let dim = points.first().ok_or(Error::Empty)?.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
        }
        let mut seen = alloc::vec![false; points.len()];
        if order.len() != points.len() || order.iter().any(|&i| i >= points.len() || core::mem::replace(&mut seen[i], true)) {
            return Err(Error::Inconsistent(format!("order is not a permutation of 0..{}", points.len())));
        }
        let mut span = AffineSpan::new(points[order[0]].clone());
        let mut chosen = alloc::vec![order[0]];
        let mut deferred = Vec::new();
        let mut rest = order.len();
        for (pos, &i) in order.iter().enumerate().skip(1) {
            if chosen.len() == dim + 1 {
                rest = pos;
                break;
            }
            if span.try_add(&points[i]) {
                chosen.push(i);
            } else {
                deferred.push(i);
            }
        }
        if chosen.len() < dim + 1 {
            return Err(Error::NotFullDimensional { dim: span.dim(), ambient: dim });
        }
        let pending: VecDeque<usize> = deferred.into_iter().chain(order[rest.min(order.len())..].iter().copied()).collect();

        let hom: Vec<Vec<BigInt>> = points.iter().map(Point::homogeneous).collect();
        let mut state = HullState {
            dim,
            points,
            hom,
            pending,
            processed: chosen.clone(),
            facets: Vec::new(),
            live: Vec::new(),
            cells: Vec::new(),
            boundary: Vec::new(),
            ridges: HashMap::new(),
            by_plane: HashMap::new(),
            marks: Vec::new(),
            epoch: 0,
            stats: HullStats::default(),
        };
        chosen.sort_unstable();
        state.cells.push(Simplex::from_sorted(chosen.clone()));
        state.stats.simplices_created = 1;
        if dim > 0 {
            for skip in 0..chosen.len() {
                let face = without(&chosen, skip);
                let rows: Vec<&[BigInt]> = face.iter().map(|&v| state.hom[v].as_slice()).collect();
                let h = hyperplane_through_homogeneous(&rows, &state.hom[chosen[skip]])?;
                let fid = state.new_facet(h, face.clone());
                state.add_boundary_cell(face, fid);
            }
        }
        state.stats.last_point = state.processed.last().copied();
        state.record_step();
        Ok(state)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Points processed so far, in processing order.
    pub fn processed(&self) -> &[usize] {
        &self.processed
    }

    pub fn pending(&self) -> impl Iterator<Item = usize> + '_ {
        self.pending.iter().copied()
    }

    pub fn stats(&self) -> &HullStats {
        &self.stats
    }

    pub fn facet(&self, id: FacetId) -> &Facet {
        &self.facets[id]
    }

    /// Live facets in creation order.
    pub fn facets(&self) -> impl Iterator<Item = (FacetId, &Facet)> + '_ {
        self.live.iter().map(|&f| (f, &self.facets[f]))
    }

    pub fn n_facets(&self) -> usize {
        self.live.len()
    }

    pub fn cells(&self) -> &[Simplex] {
        &self.cells
    }

    pub fn boundary_cells(&self) -> impl Iterator<Item = &BoundaryCell> + '_ {
        self.boundary.iter().filter(|c| c.alive)
    }

    pub fn triangulation(&self) -> Triangulation {
        Triangulation::new(self.points.clone(), self.cells.clone(), self.dim)
            .expect("cells are dim-simplices over the point list")
    }

    fn new_facet(&mut self, halfspace: Halfspace, incident: Vec<usize>) -> FacetId {
        let id = self.facets.len();
        self.by_plane.insert(halfspace.clone(), id);
        self.facets.push(Facet { halfspace, incident, alive: true, cells: Vec::new() });
        self.live.push(id);
        self.marks.push(0);
        id
    }

    fn add_boundary_cell(&mut self, vertices: Vec<usize>, owner: FacetId) {
        let id = self.boundary.len();
        for skip in 0..vertices.len() {
            let slot = self.ridges.entry(without(&vertices, skip)).or_insert([NONE, NONE]);
            let free = if slot[0] == NONE { 0 } else { 1 };
            debug_assert_eq!(slot[free], NONE, "boundary ridge in more than two cells");
            slot[free] = id;
        }
        self.facets[owner].cells.push(id);
        self.boundary.push(BoundaryCell { simplex: Simplex::from_sorted(vertices), owner, alive: true });
    }

    fn remove_boundary_cell(&mut self, id: CellId) {
        self.boundary[id].alive = false;
        let vertices = self.boundary[id].simplex.vertices().to_vec();
        for skip in 0..vertices.len() {
            let key = without(&vertices, skip);
            if let Some(slot) = self.ridges.get_mut(&key) {
                if slot[0] == id {
                    slot[0] = slot[1];
                    slot[1] = NONE;
                } else if slot[1] == id {
                    slot[1] = NONE;
                }
                if slot[0] == NONE {
                    self.ridges.remove(&key);
                }
            }
        }
    }

    /// The other boundary cell sharing `ridge` with `cell`.
    fn across(&self, ridge: &[usize], cell: CellId) -> Option<CellId> {
        let slot = self.ridges.get(ridge)?;
        let other = if slot[0] == cell { slot[1] } else { slot[0] };
        (other != NONE).then_some(other)
    }

    fn sign(&mut self, f: FacetId, hx: &[BigInt]) -> i8 {
        self.stats.evaluations += 1;
        self.facets[f].halfspace.sign_homogeneous(hx)
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.marks.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn neighbors(&self, f: FacetId) -> Vec<FacetId> {
        let mut out = Vec::new();
        for &c in &self.facets[f].cells {
            let vertices = self.boundary[c].simplex.vertices();
            for skip in 0..vertices.len() {
                if let Some(o) = self.across(&without(vertices, skip), c) {
                    let g = self.boundary[o].owner;
                    if g != f {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    /// Violated facets for homogeneous point `hx`, plus the facets with `hx`
    /// on their hyperplane when nothing is violated (the scan then covered
    /// every facet).
    fn search(&mut self, hx: &[BigInt]) -> (Vec<FacetId>, Vec<FacetId>) {
        let epoch = self.next_epoch();
        let mut seed = None;
        let mut on = Vec::new();
        for k in 0..self.live.len() {
            let f = self.live[k];
            self.marks[f] = epoch;
            match self.sign(f, hx) {
                s if s < 0 => {
                    seed = Some(f);
                    break;
                }
                0 => on.push(f),
                _ => {}
            }
        }
        let Some(seed) = seed else { return (Vec::new(), on) };
        let mut violated = alloc::vec![seed];
        let mut queue = VecDeque::from([seed]);
        while let Some(f) = queue.pop_front() {
            for g in self.neighbors(f) {
                if self.marks[g] == epoch {
                    continue;
                }
                self.marks[g] = epoch;
                if self.sign(g, hx) < 0 {
                    violated.push(g);
                    queue.push_back(g);
                }
            }
        }
        // The visible region of a polytope is connected in the dual graph,
        // so the search above is complete. Checked in debug builds.
        #[cfg(debug_assertions)]
        for &f in &self.live {
            debug_assert_eq!(
                self.facets[f].halfspace.sign_homogeneous(hx) < 0,
                violated.contains(&f),
                "breadth-first search missed a violated facet"
            );
        }
        (violated, Vec::new())
    }

    /// Facets of the current polytope strictly violated by `x`.
    pub fn find_violated(&mut self, x: &Point) -> Result<Vec<FacetId>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        let (mut violated, _) = self.search(&x.homogeneous());
        violated.sort_unstable();
        Ok(violated)
    }

    fn record_step(&mut self) {
        self.stats.steps.push(StepRecord {
            inserted: self.processed.len(),
            facets: self.live.len(),
            cells: self.cells.len(),
        });
        self.stats.star_of_last = match self.stats.last_point {
            Some(p) => self.cells.iter().filter(|c| c.contains(p)).count(),
            None => 0,
        };
    }

    /// Appends `x` to the point list and places it immediately. Returns the
    /// new point's index and what happened.
    pub fn place_point(&mut self, x: Point) -> Result<(usize, Placement)> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        let idx = self.points.len();
        self.hom.push(x.homogeneous());
        self.points.push(x);
        let placement = self.place(idx)?;
        Ok((idx, placement))
    }

    /// Places the next pending point, if any.
    pub fn place_next(&mut self) -> Option<Result<(usize, Placement)>> {
        let idx = self.pending.pop_front()?;
        Some(self.place(idx).map(|p| (idx, p)))
    }

    /// Places all pending points.
    pub fn run(&mut self) -> Result<()> {
        while let Some(r) = self.place_next() {
            r?;
        }
        Ok(())
    }

    fn place(&mut self, x: usize) -> Result<Placement> {
        let hx = self.hom[x].clone();
        self.processed.push(x);
        self.stats.last_point = Some(x);
        let (violated, on) = self.search(&hx);
        if violated.is_empty() {
            for f in on {
                insert_sorted(&mut self.facets[f].incident, x);
            }
            self.record_step();
            return Ok(Placement::Absorbed);
        }

        let epoch = self.next_epoch();
        for &f in &violated {
            self.marks[f] = epoch;
        }

        // Cone over every boundary cell of a violated facet and collect the
        // horizon ridges.
        let mut horizon = Vec::new();
        let mut new_cells = 0;
        for &f in &violated {
            for k in 0..self.facets[f].cells.len() {
                let c = self.facets[f].cells[k];
                let vertices = self.boundary[c].simplex.vertices().to_vec();
                self.cells.push(Simplex::from_sorted(with(&vertices, x)));
                new_cells += 1;
                for skip in 0..vertices.len() {
                    let ridge = without(&vertices, skip);
                    let Some(o) = self.across(&ridge, c) else { continue };
                    let g = self.boundary[o].owner;
                    if self.marks[g] != epoch {
                        horizon.push(NewBoundary {
                            vertices: with(&ridge, x),
                            inside: vertices[skip],
                            violated: f,
                            neighbor: g,
                        });
                    }
                }
            }
        }
        self.stats.simplices_created += new_cells as u64;

        for &f in &violated {
            let cells = core::mem::take(&mut self.facets[f].cells);
            for c in cells {
                self.remove_boundary_cell(c);
            }
            self.facets[f].alive = false;
            let h = self.facets[f].halfspace.clone();
            self.by_plane.remove(&h);
        }
        let facets = &self.facets;
        self.live.retain(|&f| facets[f].alive);

        // Group the new boundary cells by supporting hyperplane.
        let mut groups: Vec<(Halfspace, Vec<usize>)> = Vec::new();
        let mut group_of: HashMap<Halfspace, usize> = HashMap::new();
        for (k, nb) in horizon.iter().enumerate() {
            let rows: Vec<&[BigInt]> = nb.vertices.iter().map(|&v| self.hom[v].as_slice()).collect();
            let h = hyperplane_through_homogeneous(&rows, &self.hom[nb.inside])?;
            match group_of.get(&h) {
                Some(&g) => groups[g].1.push(k),
                None => {
                    group_of.insert(h.clone(), groups.len());
                    groups.push((h, alloc::vec![k]));
                }
            }
        }

        for (h, members) in groups {
            let fid = match self.by_plane.get(&h) {
                // coplanar with a surviving facet: extend it
                Some(&fid) => {
                    insert_sorted(&mut self.facets[fid].incident, x);
                    fid
                }
                None => {
                    let mut candidates: Vec<usize> = Vec::new();
                    for &k in &members {
                        candidates.extend_from_slice(&self.facets[horizon[k].violated].incident);
                        candidates.extend_from_slice(&self.facets[horizon[k].neighbor].incident);
                    }
                    candidates.sort_unstable();
                    candidates.dedup();
                    let mut incident = alloc::vec![x];
                    for p in candidates {
                        self.stats.evaluations += 1;
                        if h.sign_homogeneous(&self.hom[p]) == 0 {
                            incident.push(p);
                        }
                    }
                    incident.sort_unstable();
                    self.new_facet(h, incident)
                }
            };
            for k in members {
                let vertices = core::mem::take(&mut horizon[k].vertices);
                self.add_boundary_cell(vertices, fid);
            }
        }

        self.record_step();
        Ok(Placement::Extended { violated: violated.len(), new_cells })
    }

    /// Verifies the boundary bookkeeping against the geometry: every live
    /// facet is valid for all processed points with exact incidences, every
    /// boundary cell lies in its owner's hyperplane, and every boundary
    /// ridge is shared by exactly two boundary cells.
    pub fn check(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::Inconsistent(msg));
        for &f in &self.live {
            let facet = &self.facets[f];
            let mut on = Vec::new();
            for &p in &self.processed {
                match facet.halfspace.sign_homogeneous(&self.hom[p]) {
                    s if s < 0 => return fail(format!("point {p} violates live facet {f}")),
                    0 => on.push(p),
                    _ => {}
                }
            }
            on.sort_unstable();
            if on != facet.incident {
                return fail(format!("facet {f} incidences {:?} != {:?}", facet.incident, on));
            }
            if facet.cells.is_empty() {
                return fail(format!("facet {f} has no boundary cells"));
            }
            for &c in &facet.cells {
                let cell = &self.boundary[c];
                if !cell.alive || cell.owner != f {
                    return fail(format!("boundary cell {c} misassigned"));
                }
                for &v in cell.simplex.vertices() {
                    if facet.halfspace.sign_homogeneous(&self.hom[v]) != 0 {
                        return fail(format!("boundary cell {c} leaves its facet plane"));
                    }
                }
            }
        }
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for cell in self.boundary.iter().filter(|c| c.alive) {
            if !self.facets[cell.owner].alive {
                return fail(format!("live boundary cell owned by dead facet {}", cell.owner));
            }
            for r in cell.simplex.facets() {
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        if let Some((r, n)) = counts.iter().find(|(_, &n)| n != 2) {
            return fail(format!("boundary ridge {r:?} in {n} cells"));
        }
        Ok(())
    }
}
