//! Minimum hitting-set engine shared by all three problems.
//!
//! Elements are constraints, each with a candidate list of vertices; a set of
//! vertices is feasible when every element has a chosen candidate.

use std::collections::HashMap;

use super::CancelToken;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct CoverInstance {
    pub nv: usize,
    /// element -> candidate vertices (sorted)
    pub cands: Vec<Vec<usize>>,
    /// vertex -> elements it covers
    pub covers: Vec<Vec<usize>>,
}

impl CoverInstance {
    pub fn new(nv: usize, cands: Vec<Vec<usize>>) -> Self {
        let mut covers = vec![Vec::new(); nv];
        for (e, list) in cands.iter().enumerate() {
            for &v in list {
                covers[v].push(e);
            }
        }
        CoverInstance { nv, cands, covers }
    }

    pub fn ne(&self) -> usize {
        self.cands.len()
    }

    pub fn has_empty_element(&self) -> bool {
        self.cands.iter().any(Vec::is_empty)
    }

    /// Greedy cover (max new coverage, lowest id on ties). `None` if infeasible.
    pub fn greedy(&self) -> Option<Vec<usize>> {
        if self.has_empty_element() {
            return None;
        }
        let mut hit = vec![false; self.ne()];
        let mut left = self.ne();
        let mut out = Vec::new();
        while left > 0 {
            let (best, gain) = (0..self.nv)
                .map(|v| (v, self.covers[v].iter().filter(|&&e| !hit[e]).count()))
                .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            debug_assert!(gain > 0);
            for &e in &self.covers[best] {
                if !hit[e] {
                    hit[e] = true;
                    left -= 1;
                }
            }
            out.push(best);
        }
        out.sort_unstable();
        Some(out)
    }
}

/// Depth-first branch and bound for covers of size at most `limit`.
pub(crate) struct Search<'a> {
    inst: &'a CoverInstance,
    cnt: Vec<u32>,
    avail: Vec<u32>,
    forbidden: Vec<bool>,
    chosen: Vec<usize>,
    uncovered: usize,
    /// solutions must have size `< bound`
    bound: usize,
    /// stop as soon as a solution of size `<= stop_at` is found
    stop_at: usize,
    pub best: Option<Vec<usize>>,
    pub nodes: u64,
    cancel: Option<&'a CancelToken>,
    scratch_used: Vec<u32>,
    stamp: u32,
}

impl<'a> Search<'a> {
    pub fn new(inst: &'a CoverInstance, cancel: Option<&'a CancelToken>) -> Self {
        let avail = inst.cands.iter().map(|c| c.len() as u32).collect();
        Search {
            inst,
            cnt: vec![0; inst.ne()],
            avail,
            forbidden: vec![false; inst.nv],
            chosen: Vec::new(),
            uncovered: inst.ne(),
            bound: usize::MAX,
            stop_at: 0,
            best: None,
            nodes: 0,
            cancel,
            scratch_used: vec![0; inst.nv],
            stamp: 0,
        }
    }

    fn choose(&mut self, v: usize) {
        self.chosen.push(v);
        for &e in &self.inst.covers[v] {
            if self.cnt[e] == 0 {
                self.uncovered -= 1;
            }
            self.cnt[e] += 1;
        }
    }

    fn unchoose(&mut self) {
        let v = self.chosen.pop().unwrap();
        for &e in &self.inst.covers[v] {
            self.cnt[e] -= 1;
            if self.cnt[e] == 0 {
                self.uncovered += 1;
            }
        }
    }

    fn forbid(&mut self, v: usize) {
        debug_assert!(!self.forbidden[v]);
        self.forbidden[v] = true;
        for &e in &self.inst.covers[v] {
            self.avail[e] -= 1;
        }
    }

    fn allow(&mut self, v: usize) {
        self.forbidden[v] = false;
        for &e in &self.inst.covers[v] {
            self.avail[e] += 1;
        }
    }

    /// Forces `v` into every solution (for lexicographic prefix fixing).
    pub fn force(&mut self, v: usize) {
        self.choose(v);
    }

    /// Excludes `v` from every solution.
    pub fn exclude(&mut self, v: usize) {
        if !self.forbidden[v] {
            self.forbid(v);
        }
    }

    /// Packing lower bound on the number of further picks.
    fn packing_bound(&mut self) -> Option<usize> {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.scratch_used.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
        let max_avail = self.inst.cands.iter().map(Vec::len).max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_avail + 1];
        for e in 0..self.inst.ne() {
            if self.cnt[e] == 0 {
                if self.avail[e] == 0 {
                    return None;
                }
                buckets[self.avail[e] as usize].push(e);
            }
        }
        let mut count = 0;
        for bucket in &buckets {
            for &e in bucket {
                let free = self.inst.cands[e]
                    .iter()
                    .all(|&v| self.forbidden[v] || self.scratch_used[v] != self.stamp);
                if free {
                    count += 1;
                    for &v in &self.inst.cands[e] {
                        self.scratch_used[v] = self.stamp;
                    }
                }
            }
        }
        let max_gain = (0..self.inst.nv)
            .filter(|&v| !self.forbidden[v])
            .map(|v| self.inst.covers[v].iter().filter(|&&e| self.cnt[e] == 0).count())
            .max()
            .unwrap_or(0);
        let ratio = if max_gain == 0 { usize::MAX } else { self.uncovered.div_ceil(max_gain) };
        Some(count.max(ratio))
    }

    /// Uncovered elements grouped by shared available candidates.
    fn components(&self) -> Vec<Vec<usize>> {
        let ne = self.inst.ne();
        let mut parent: Vec<usize> = (0..ne).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut owner = vec![usize::MAX; self.inst.nv];
        for e in (0..ne).filter(|&e| self.cnt[e] == 0) {
            for &v in &self.inst.cands[e] {
                if self.forbidden[v] {
                    continue;
                }
                if owner[v] == usize::MAX {
                    owner[v] = e;
                } else {
                    let (a, b) = (find(&mut parent, e), find(&mut parent, owner[v]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; ne];
        for e in (0..ne).filter(|&e| self.cnt[e] == 0) {
            let r = find(&mut parent, e);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(e);
        }
        groups.sort_by_key(Vec::len);
        groups
    }

    /// Solves independent parts separately; their optima add up.
    fn solve_components(&mut self, comps: Vec<Vec<usize>>) -> Result<bool> {
        let mut total = self.chosen.clone();
        let mut allowance = self.bound - self.chosen.len();
        let count = comps.len();
        for (idx, comp) in comps.into_iter().enumerate() {
            let later = count - idx - 1;
            if allowance <= later {
                return Ok(false);
            }
            let mut local = HashMap::new();
            let mut back = Vec::new();
            let cands: Vec<Vec<usize>> = comp
                .iter()
                .map(|&e| {
                    self.inst.cands[e]
                        .iter()
                        .filter(|&&v| !self.forbidden[v])
                        .map(|&v| {
                            *local.entry(v).or_insert_with(|| {
                                back.push(v);
                                back.len() - 1
                            })
                        })
                        .collect()
                })
                .collect();
            let sub = CoverInstance::new(back.len(), cands);
            let mut s = Search::new(&sub, self.cancel);
            s.run(allowance - later, 0)?;
            self.nodes += s.nodes;
            match s.best {
                None => return Ok(false),
                Some(sol) => {
                    allowance -= sol.len();
                    total.extend(sol.into_iter().map(|v| back[v]));
                }
            }
        }
        total.sort_unstable();
        self.bound = total.len();
        self.best = Some(total);
        Ok(self.bound <= self.stop_at)
    }

    fn check_cancel(&self) -> Result<()> {
        if self.nodes % 2048 == 1 {
            if let Some(c) = self.cancel {
                if c.is_cancelled() {
                    return Err(Error::Cancelled);
                }
            }
        }
        Ok(())
    }

    /// Finds a minimum cover with size `< bound`, stopping early at `stop_at`.
    pub fn run(&mut self, bound: usize, stop_at: usize) -> Result<()> {
        self.bound = bound;
        self.stop_at = stop_at;
        self.dfs().map(|_| ())
    }

    /// Returns `true` when the search should stop entirely.
    fn dfs(&mut self) -> Result<bool> {
        self.nodes += 1;
        self.check_cancel()?;
        if self.uncovered == 0 {
            let mut sol = self.chosen.clone();
            sol.sort_unstable();
            self.bound = sol.len();
            self.best = Some(sol);
            return Ok(self.bound <= self.stop_at);
        }
        if self.chosen.len() + 1 >= self.bound {
            return Ok(false);
        }
        let lb = match self.packing_bound() {
            Some(lb) => lb,
            None => return Ok(false),
        };
        if self.chosen.len() + lb >= self.bound {
            return Ok(false);
        }
        let comps = self.components();
        if comps.len() > 1 {
            return self.solve_components(comps);
        }
        // uncovered element with fewest available candidates
        let mut pick = usize::MAX;
        let mut pick_avail = u32::MAX;
        for e in 0..self.inst.ne() {
            if self.cnt[e] == 0 && self.avail[e] < pick_avail {
                pick = e;
                pick_avail = self.avail[e];
                if pick_avail == 1 {
                    break;
                }
            }
        }
        let mut options: Vec<(usize, usize)> = self.inst.cands[pick]
            .iter()
            .filter(|&&v| !self.forbidden[v])
            .map(|&v| {
                let gain = self.inst.covers[v].iter().filter(|&&e| self.cnt[e] == 0).count();
                (v, gain)
            })
            .collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut excluded = Vec::new();
        let mut stop = false;
        for (v, _) in options {
            if self.chosen.len() + 1 >= self.bound {
                break;
            }
            self.choose(v);
            let r = self.dfs();
            self.unchoose();
            match r {
                Ok(true) => {
                    stop = true;
                    break;
                }
                Ok(false) => {}
                Err(e) => {
                    for &x in &excluded {
                        self.allow(x);
                    }
                    return Err(e);
                }
            }
            self.forbid(v);
            excluded.push(v);
        }
        for &x in excluded.iter().rev() {
            self.allow(x);
        }
        Ok(stop)
    }
}
