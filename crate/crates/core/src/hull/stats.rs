use alloc::vec::Vec;

/// Sizes after one insertion step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepRecord {
    /// Points processed so far (`n_k`), including absorbed ones.
    pub inserted: usize,
    /// Live facets (`m_k`).
    pub facets: usize,
    /// Maximal cells of the placing triangulation (`t_k`).
    pub cells: usize,
}

/// Operation counts of one hull computation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HullStats {
    /// One record for the initial simplex and one per later point.
    pub steps: Vec<StepRecord>,
    /// Halfspace evaluations (scalar products) performed.
    pub evaluations: u64,
    /// Maximal cells created.
    pub simplices_created: u64,
    /// Cells containing the last processed point; zero if it was absorbed.
    pub star_of_last: usize,
    /// Index of the last processed point.
    pub last_point: Option<usize>,
}

impl HullStats {
    pub fn final_cells(&self) -> usize {
        self.steps.last().map_or(0, |s| s.cells)
    }

    pub fn final_facets(&self) -> usize {
        self.steps.last().map_or(0, |s| s.facets)
    }

    /// `t_k <= t_{k+1}` and `m_k <= (d + 1) t_k` over all recorded steps.
    pub fn growth_bounds_hold(&self, dim: usize) -> bool {
        self.steps.windows(2).all(|w| w[0].cells <= w[1].cells)
            && self.steps.iter().all(|s| s.facets <= (dim + 1) * s.cells)
    }
}
