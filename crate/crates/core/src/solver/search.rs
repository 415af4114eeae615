//! Depth-first search for per-edge ribbon vectors whose Gram matrix lies in
//! the compatibility class.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::graph::Graph;
use crate::planar::CompatibilityClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Form {
    /// `g` hyperbolic blocks over GF(2).
    Symplectic(usize),
    /// Identity form on `m` coordinates.
    Identity(usize),
}

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

impl Form {
    pub fn dim(self) -> usize {
        match self {
            Form::Symplectic(g) => 2 * g,
            Form::Identity(m) => m,
        }
    }

    #[inline]
    pub fn eval(self, a: u64, b: u64) -> bool {
        let b = match self {
            Form::Symplectic(_) => ((b & LOW_BITS) << 1) | ((b >> 1) & LOW_BITS),
            Form::Identity(_) => b,
        };
        (a & b).count_ones() & 1 == 1
    }

    /// One vector per orbit of the form's isometry group (or a subgroup):
    /// the symplectic group is transitive on nonzero vectors, and
    /// coordinate permutations preserve the identity form.
    fn first_edge_choices(self) -> Vec<u64> {
        match self {
            Form::Symplectic(0) | Form::Identity(0) => vec![0],
            Form::Symplectic(_) => vec![0, 1],
            Form::Identity(m) => (0..=m).map(|w| (1u64 << w) - 1).collect(),
        }
    }
}

pub(crate) struct Problem {
    n: usize,
    form: Form,
    /// Checks that become decidable once edge `e` is assigned.
    checks: Vec<Vec<(Vec<(usize, usize)>, bool)>>,
}

impl Problem {
    pub fn new(g: &Graph, form: Form) -> Self {
        assert!(form.dim() <= 64, "at most 64 ribbons are supported");
        let class = CompatibilityClass::new(g);
        let mut checks = vec![Vec::new(); g.edge_count()];
        for c in class.parity_checks() {
            let pairs = c.pairs.iter().map(|&k| (class.pairs()[k].i, class.pairs()[k].j)).collect();
            checks[c.last_edge].push((pairs, c.rhs));
        }
        Problem { n: g.edge_count(), form, checks }
    }

    fn consistent(&self, y: &[u64], e: usize) -> bool {
        self.checks[e]
            .iter()
            .all(|(pairs, rhs)| pairs.iter().fold(false, |acc, &(i, j)| acc ^ self.form.eval(y[i], y[j])) == *rhs)
    }

    fn choices(&self, e: usize) -> Vec<u64> {
        if e == 0 {
            self.form.first_edge_choices()
        } else {
            (0..1u64 << self.form.dim()).collect()
        }
    }
}

pub(crate) enum Found {
    Yes(Vec<u64>),
    No,
    OutOfBudget,
}

pub(crate) struct Control {
    pub max_nodes: u64,
    pub deadline: Instant,
    pub nodes: AtomicU64,
    pub stop: AtomicBool,
}

impl Control {
    /// Counts one node; `false` once the budget is spent or a sibling
    /// worker has finished.
    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if k > self.max_nodes || (k % 1024 == 0 && Instant::now() >= self.deadline) {
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

fn dfs(p: &Problem, y: &mut Vec<u64>, e: usize, ctl: &Control) -> Step {
    if e == p.n {
        return Step::Found;
    }
    for c in p.choices(e) {
        if !ctl.tick() {
            return Step::Stopped;
        }
        y[e] = c;
        if p.consistent(y, e) {
            match dfs(p, y, e + 1, ctl) {
                Step::Exhausted => {}
                other => return other,
            }
        }
    }
    Step::Exhausted
}

/// All consistent assignments of the first `depth` edges, in DFS order.
fn frontier(p: &Problem, depth: usize, ctl: &Control) -> Option<Vec<Vec<u64>>> {
    let mut level = vec![vec![0u64; p.n]];
    for e in 0..depth {
        let mut next = Vec::new();
        for y in &level {
            for c in p.choices(e) {
                if !ctl.tick() {
                    return None;
                }
                let mut z = y.clone();
                z[e] = c;
                if p.consistent(&z, e) {
                    next.push(z);
                }
            }
        }
        level = next;
    }
    Some(level)
}

/// Runs the search. With several threads the subtrees below a shallow
/// frontier are shared out; whichever worker finds a solution first wins.
pub(crate) fn search(p: &Problem, ctl: &Control, threads: usize) -> Found {
    if threads <= 1 || p.n < 3 {
        let mut y = vec![0u64; p.n];
        return match dfs(p, &mut y, 0, ctl) {
            Step::Found => Found::Yes(y),
            Step::Exhausted => Found::No,
            Step::Stopped => Found::OutOfBudget,
        };
    }
    let depth = (1..p.n).find(|&d| p.form.dim() * d >= 6 + threads.ilog2() as usize).unwrap_or(p.n - 1);
    let Some(roots) = frontier(p, depth, ctl) else { return Found::OutOfBudget };
    let next = AtomicUsize::new(0);
    let result: Mutex<Option<Vec<u64>>> = Mutex::new(None);
    let stopped = AtomicBool::new(false);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(root) = roots.get(k) else { break };
                let mut y = root.clone();
                match dfs(p, &mut y, depth, ctl) {
                    Step::Found => {
                        let mut r = result.lock().unwrap();
                        if r.is_none() {
                            *r = Some(y);
                        }
                        ctl.stop.store(true, Ordering::Relaxed);
                        break;
                    }
                    Step::Stopped => {
                        stopped.store(true, Ordering::Relaxed);
                        break;
                    }
                    Step::Exhausted => {}
                }
            });
        }
    });
    if let Some(y) = result.into_inner().unwrap() {
        return Found::Yes(y);
    }
    if stopped.load(Ordering::Relaxed) {
        Found::OutOfBudget
    } else {
        Found::No
    }
}
