use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::graph::EdgeId;
use crate::planar::{content_lines, parse_drawing_lines, PlanarDrawing};

/// A closed surface given as a disk with ribbons attached along its boundary:
/// `2g` untwisted ribbons interlaced in pairs, or `m` twisted ribbons that
/// do not interlace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceSpec {
    Orientable(usize),
    Nonorientable(usize),
}

impl SurfaceSpec {
    pub fn new_nonorientable(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("a nonorientable surface needs at least one crosscap".into()));
        }
        Ok(SurfaceSpec::Nonorientable(m))
    }

    pub fn ribbon_count(&self) -> usize {
        match *self {
            SurfaceSpec::Orientable(g) => 2 * g,
            SurfaceSpec::Nonorientable(m) => m,
        }
    }

    pub fn is_orientable(&self) -> bool {
        matches!(self, SurfaceSpec::Orientable(_))
    }

    /// Euler characteristic of the closed surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 - self.ribbon_count() as i64
    }
}

/// `S:g` or `M:m`.
impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceSpec::Orientable(g) => write!(f, "S:{g}"),
            SurfaceSpec::Nonorientable(m) => write!(f, "M:{m}"),
        }
    }
}

impl FromStr for SurfaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("invalid surface `{s}`; expected S:<g> or M:<m>") };
        let (kind, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "S" => Ok(SurfaceSpec::Orientable(n)),
            "M" => SurfaceSpec::new_nonorientable(n),
            _ => Err(bad()),
        }
    }
}

/// Whether pass counts are read modulo 2 or as signed integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PassMode {
    Z2,
    Z,
}

impl fmt::Display for PassMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PassMode::Z2 => "z2",
            PassMode::Z => "z",
        })
    }
}

/// A drawing of a graph on a disk-with-ribbons surface.
///
/// Each edge is the core planar curve with a loop spliced in at one of its
/// segments. The loop climbs out of the core disk, runs through the ribbons
/// as recorded in the pass vector, and comes back. Loops are stacked in
/// `tube_order`, innermost first.
#[derive(Clone, PartialEq, Eq)]
pub struct SurfaceDrawing {
    surface: SurfaceSpec,
    mode: PassMode,
    core: PlanarDrawing,
    passes: Vec<Vec<i64>>,
    tube_order: Vec<EdgeId>,
    attach: Vec<usize>,
}

impl SurfaceDrawing {
    /// `passes[e][k]` is the net signed number of times edge `e` runs
    /// through ribbon `k`; in Z₂ mode it must be 0 or 1. `attach[e]` is the
    /// index of the core segment of `e` carrying the loop.
    pub fn new(
        surface: SurfaceSpec,
        mode: PassMode,
        core: PlanarDrawing,
        passes: Vec<Vec<i64>>,
        tube_order: Vec<EdgeId>,
        attach: Vec<usize>,
    ) -> Result<Self> {
        if let SurfaceSpec::Nonorientable(0) = surface {
            return Err(Error::Precondition("a nonorientable surface needs at least one crosscap".into()));
        }
        let n = core.graph().edge_count();
        let r = surface.ribbon_count();
        if passes.len() != n {
            return Err(Error::Dimension(format!("{} pass vectors for {n} edges", passes.len())));
        }
        for (e, p) in passes.iter().enumerate() {
            if p.len() != r {
                return Err(Error::Dimension(format!("edge {e} has {} pass entries, surface has {r} ribbons", p.len())));
            }
            if mode == PassMode::Z2 && p.iter().any(|&x| x != 0 && x != 1) {
                return Err(Error::Precondition(format!("edge {e} has a non-binary pass entry in z2 mode")));
            }
        }
        let mut seen = vec![false; n];
        if tube_order.len() != n || !tube_order.iter().all(|&e| e < n && !std::mem::replace(&mut seen[e], true)) {
            return Err(Error::Precondition("tube order is not a permutation of the edges".into()));
        }
        if attach.len() != n {
            return Err(Error::Dimension(format!("{} attach indices for {n} edges", attach.len())));
        }
        for (e, &a) in attach.iter().enumerate() {
            if a + 1 >= core.polyline(e).len() {
                return Err(Error::Dimension(format!("attach index {a} out of range for edge {e}")));
            }
        }
        Ok(SurfaceDrawing { surface, mode, core, passes, tube_order, attach })
    }

    pub fn surface(&self) -> SurfaceSpec {
        self.surface
    }

    pub fn mode(&self) -> PassMode {
        self.mode
    }

    pub fn core(&self) -> &PlanarDrawing {
        &self.core
    }

    pub fn passes(&self) -> &[Vec<i64>] {
        &self.passes
    }

    pub fn tube_order(&self) -> &[EdgeId] {
        &self.tube_order
    }

    pub fn attach(&self) -> &[usize] {
        &self.attach
    }

    /// Homology coordinates of each edge closed up through the disk. In this
    /// model they are the pass vectors themselves.
    pub fn homology_vectors(&self) -> Vec<Vec<i64>> {
        self.passes.clone()
    }
}

impl fmt::Debug for SurfaceDrawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| format!(" {x}")).collect()
}

impl fmt::Display for SurfaceDrawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.surface {
            SurfaceSpec::Orientable(g) => writeln!(f, "surface S {g}")?,
            SurfaceSpec::Nonorientable(m) => writeln!(f, "surface M {m}")?,
        }
        writeln!(f, "mode {}", self.mode)?;
        write!(f, "{}", self.core)?;
        for (e, p) in self.passes.iter().enumerate() {
            writeln!(f, "passes {e} :{}", join(p))?;
        }
        writeln!(f, "order :{}", join(&self.tube_order))?;
        writeln!(f, "attach :{}", join(&self.attach))
    }
}

fn parse_list<T: FromStr>(ln: usize, rest: &str, what: &str) -> Result<Vec<T>> {
    rest.split_whitespace()
        .map(|w| w.parse().map_err(|_| parse_err(ln, format!("invalid {what} `{w}`"))))
        .collect()
}

impl FromStr for SurfaceDrawing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines = content_lines(s);
        let mut pos = 0;
        let mut next = |what: &str| -> Result<(usize, &str)> {
            let item = lines.get(pos).copied().ok_or_else(|| parse_err(0, format!("missing {what}")))?;
            pos += 1;
            Ok(item)
        };
        let (ln, header) = next("`surface` header")?;
        let words: Vec<&str> = header.split_whitespace().collect();
        let surface = match words.as_slice() {
            ["surface", kind, n] => {
                let n: usize = n.parse().map_err(|_| parse_err(ln, "invalid surface parameter"))?;
                match *kind {
                    "S" => SurfaceSpec::Orientable(n),
                    "M" => SurfaceSpec::new_nonorientable(n).map_err(|_| parse_err(ln, "M needs m >= 1"))?,
                    _ => return Err(parse_err(ln, "surface kind must be S or M")),
                }
            }
            _ => return Err(parse_err(ln, "expected `surface S <g>` or `surface M <m>`")),
        };
        let (ln, mode_line) = next("`mode` line")?;
        let mode = match mode_line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["mode", "z2"] => PassMode::Z2,
            ["mode", "z"] => PassMode::Z,
            _ => return Err(parse_err(ln, "expected `mode z2` or `mode z`")),
        };
        let (core, used) = parse_drawing_lines(&lines[2..])?;
        pos = 2 + used;
        let mut passes = Vec::new();
        let mut order = None;
        let mut attach = None;
        for &(ln, line) in &lines[pos..] {
            let (head, rest) = line.split_once(':').ok_or_else(|| parse_err(ln, "expected `<keyword> ... : <values>`"))?;
            let head: Vec<&str> = head.split_whitespace().collect();
            match head.as_slice() {
                ["passes", id] => {
                    let id: usize = id.parse().map_err(|_| parse_err(ln, "invalid edge id"))?;
                    if id != passes.len() || order.is_some() {
                        return Err(parse_err(ln, format!("passes lines must list edges in order; expected {}", passes.len())));
                    }
                    passes.push(parse_list::<i64>(ln, rest, "pass count")?);
                }
                ["order"] if order.is_none() => order = Some(parse_list::<usize>(ln, rest, "edge id")?),
                ["attach"] if attach.is_none() && order.is_some() => {
                    attach = Some(parse_list::<usize>(ln, rest, "attach index")?)
                }
                _ => return Err(parse_err(ln, "unexpected line in surface drawing")),
            }
        }
        let order = order.ok_or_else(|| parse_err(0, "missing `order` line"))?;
        let attach = attach.ok_or_else(|| parse_err(0, "missing `attach` line"))?;
        SurfaceDrawing::new(surface, mode, core, passes, order, attach)
    }
}
