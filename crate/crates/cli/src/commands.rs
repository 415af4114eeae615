use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use z2embed::gf2::{factor_even, factor_odd, rank_gf2, BitMatrix};
use z2embed::graph::{independent_pairs, Graph};
use z2embed::int::{factor_alternating, rank_q, IntMatrix};
use z2embed::planar::{
    crossing_parity_matrix, is_compatible_mod2, realize_parity, signed_crossing_matrix, CompatibilityClass,
    ParityMatrix, PlanarDrawing,
};
use z2embed::solver::{
    k2n_lower_bound, kmn_lower_bound, z2_embeddable_euler, z2_embeddable_nonorientable, z2_embeddable_orientable,
    Outcome, SolverBudget,
};
use z2embed::surface::{
    construct_z2_embedding, construct_z_embedding, extract_matrix, verify_geometric, verify_z, verify_z2,
    ExtractedMatrix, PassMode, SurfaceDrawing, SurfaceSpec,
};
use z2embed::Error;

use crate::FactorMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Affirmative = 0,
    Negative = 1,
    Unknown = 2,
}

/// Command output, printable as prose or as `key = value` lines.
pub struct Report {
    pub status: Status,
    human: Vec<String>,
    kv: Vec<(String, String)>,
}

impl Report {
    fn new(status: Status) -> Self {
        Report { status, human: Vec::new(), kv: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.human.push(s.into());
    }

    fn field(&mut self, key: &str, value: impl Display) {
        self.kv.push((key.to_string(), value.to_string()));
    }

    /// A labelled value shown in both forms.
    fn both(&mut self, key: &str, value: impl Display) {
        self.line(format!("{key}: {value}"));
        self.field(key, value);
    }

    /// Multi-line text; in `key = value` form the lines are joined by `;`.
    fn block(&mut self, key: &str, text: &str) {
        self.human.extend(text.lines().map(str::to_string));
        self.field(key, text.lines().collect::<Vec<_>>().join(";"));
    }

    pub fn human_text(&self) -> String {
        self.human.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn kv_text(&self) -> String {
        self.kv.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

fn read<T: FromStr<Err = Error>>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    text.parse().map_err(|e: Error| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn fail(e: Error) -> String {
    e.to_string()
}

pub fn crossings(drawing: &Path, signed: bool) -> Result<Report, String> {
    let d: PlanarDrawing = read(drawing)?;
    let mut r = Report::new(Status::Affirmative);
    r.field("kind", if signed { "signed" } else { "parity" });
    r.field("crossings", d.crossings().len());
    if signed {
        r.block("matrix", &signed_crossing_matrix(&d).to_string());
    } else {
        r.block("matrix", &crossing_parity_matrix(&d).matrix().to_string());
    }
    Ok(r)
}

fn read_parity_target(g: &Graph, matrix: &Path) -> Result<ParityMatrix, String> {
    let m: BitMatrix = read(matrix)?;
    ParityMatrix::from_matrix(g, &m).map_err(fail)
}

pub fn compat(graph: &Path, matrix: &Path) -> Result<Report, String> {
    let g: Graph = read(graph)?;
    let target = read_parity_target(&g, matrix)?;
    match is_compatible_mod2(&g, &target).map_err(fail)? {
        Some(moves) => {
            let mut r = Report::new(Status::Affirmative);
            r.line("COMPATIBLE");
            r.field("result", "COMPATIBLE");
            r.both("finger_moves", moves.len());
            let listed: Vec<String> = moves.iter().map(|(e, v)| format!("{e}:{v}")).collect();
            for (e, v) in &moves {
                r.line(format!("finger edge {e} vertex {v}"));
            }
            r.field("certificate", listed.join(" "));
            Ok(r)
        }
        None => {
            let mut r = Report::new(Status::Negative);
            r.line("INCOMPATIBLE");
            r.field("result", "INCOMPATIBLE");
            let class = CompatibilityClass::new(&g);
            let t = target.to_pair_vector(class.pairs());
            if let Some(h) = class
                .parity_checks()
                .into_iter()
                .find(|h| h.pairs.iter().fold(false, |a, &k| a ^ t.get(k)) != h.rhs)
            {
                let pairs: Vec<String> =
                    h.pairs.iter().map(|&k| format!("{}-{}", class.pairs()[k].i, class.pairs()[k].j)).collect();
                let text = format!("sum over {} must be {}", pairs.join(" "), u8::from(h.rhs));
                r.line(format!("violated check: {text}"));
                r.field("violated_check", text);
            }
            Ok(r)
        }
    }
}

pub fn realize(graph: &Path, matrix: &Path, out: &Path) -> Result<Report, String> {
    let g: Graph = read(graph)?;
    let target = read_parity_target(&g, matrix)?;
    match realize_parity(&g, &target) {
        Ok(d) => {
            write(out, &d.to_string())?;
            let mut r = Report::new(Status::Affirmative);
            r.line("REALIZED");
            r.field("result", "REALIZED");
            r.both("out", out.display());
            r.both("segments", d.segment_count());
            Ok(r)
        }
        Err(Error::Incompatible) => {
            let mut r = Report::new(Status::Negative);
            r.line("INCOMPATIBLE");
            r.field("result", "INCOMPATIBLE");
            Ok(r)
        }
        Err(e) => Err(fail(e)),
    }
}

pub fn factor(mode: FactorMode, matrix: &Path) -> Result<Report, String> {
    let mut r = Report::new(Status::Affirmative);
    match mode {
        FactorMode::Even | FactorMode::Odd => {
            let a: BitMatrix = read(matrix)?;
            let y = if matches!(mode, FactorMode::Even) { factor_even(&a) } else { factor_odd(&a) }.map_err(fail)?;
            r.both("rank", rank_gf2(&a));
            r.both("rows", y.rows());
            r.block("factor", &y.to_string());
        }
        FactorMode::Alternating => {
            let a: IntMatrix = read(matrix)?;
            let b = factor_alternating(&a).map_err(fail)?;
            r.both("rank", rank_q(&a));
            r.both("rows", b.rows());
            r.block("factor", &b.to_string());
        }
    }
    Ok(r)
}

pub enum Target {
    Genus(usize),
    Crosscaps(usize),
    Euler(i64),
}

pub fn solve(
    graph: &Path,
    target: Target,
    budget_nodes: Option<u64>,
    time_cap: Option<u64>,
    threads: usize,
    witness_out: Option<&Path>,
) -> Result<Report, String> {
    let g: Graph = read(graph)?;
    let mut budget = SolverBudget { threads, ..SolverBudget::default() };
    if let Some(n) = budget_nodes {
        budget.max_nodes = n;
    }
    if let Some(s) = time_cap {
        budget.time_cap = Duration::from_secs(s);
    }
    let outcome = match target {
        Target::Genus(k) => z2_embeddable_orientable(&g, k, &budget),
        Target::Crosscaps(m) => z2_embeddable_nonorientable(&g, m, &budget),
        Target::Euler(e) => z2_embeddable_euler(&g, e, &budget),
    }
    .map_err(fail)?;
    match outcome {
        Outcome::Yes(w) => {
            // Independent re-check of the witness before answering.
            let report = verify_z2(&w.surface_drawing).map_err(fail)?;
            if !report.is_embedding {
                return Err("internal error: witness failed verification".into());
            }
            let mut r = Report::new(Status::Affirmative);
            r.line("YES");
            r.field("result", "YES");
            r.both("surface", w.surface());
            r.both("rank", rank_gf2(&w.matrix));
            r.both("nodes", w.nodes);
            r.both("parallel", w.parallel);
            if let Some(path) = witness_out {
                write(path, &w.surface_drawing.to_string())?;
                r.both("witness", path.display());
            }
            Ok(r)
        }
        Outcome::No => {
            let mut r = Report::new(Status::Negative);
            r.line("NO");
            r.field("result", "NO");
            Ok(r)
        }
        Outcome::Unknown => {
            let mut r = Report::new(Status::Unknown);
            r.line("UNKNOWN");
            r.field("result", "UNKNOWN");
            Ok(r)
        }
    }
}

pub fn bound(kmn: Option<&[u64]>, k2n: Option<u64>) -> Report {
    let value = match (kmn, k2n) {
        (Some(mn), _) => kmn_lower_bound(mn[0], mn[1]),
        (_, Some(n)) => k2n_lower_bound(n),
        _ => unreachable!("clap enforces one bound"),
    };
    let mut r = Report::new(Status::Affirmative);
    r.line(value.to_string());
    r.field("bound", value);
    r
}

pub fn construct(
    graph: &Path,
    drawing: &Path,
    factor: &Path,
    surface: &str,
    z: bool,
    out: Option<&Path>,
) -> Result<Report, String> {
    let g: Graph = read(graph)?;
    let f: PlanarDrawing = read(drawing)?;
    let s: SurfaceSpec = surface.parse().map_err(fail)?;
    let sd = if z {
        let b: IntMatrix = read(factor)?;
        construct_z_embedding(&g, &f, &b, s)
    } else {
        let y: BitMatrix = read(factor)?;
        construct_z2_embedding(&g, &f, &y, s)
    }
    .map_err(fail)?;
    let check = if z { verify_z(&sd) } else { verify_z2(&sd) }.map_err(fail)?;
    let mut r = Report::new(Status::Affirmative);
    match out {
        Some(path) => {
            write(path, &sd.to_string())?;
            r.both("out", path.display());
        }
        None => r.block("surface_drawing", &sd.to_string()),
    }
    r.both("embedding", check.is_embedding);
    Ok(r)
}

pub fn verify(path: &Path, z: bool, geometric: bool) -> Result<Report, String> {
    let sd: SurfaceDrawing = read(path)?;
    let mode = if z { PassMode::Z } else { PassMode::Z2 };
    let report = if z { verify_z(&sd) } else { verify_z2(&sd) }.map_err(fail)?;
    let mut ok = report.is_embedding;
    let mut r = Report::new(Status::Affirmative);
    let what = if z { "sum" } else { "parity" };
    for p in &report.pairs {
        r.line(format!("pair {} {} {what} {}", p.e, p.f, p.value));
    }
    let bad: Vec<String> = report.violations().map(|p| format!("{}-{}:{}", p.e, p.f, p.value)).collect();
    r.field("pairs", report.pairs.len());
    r.field("violations", bad.join(" "));
    if geometric {
        let geo = verify_geometric(&sd, mode).map_err(fail)?;
        let agree = geo == report;
        ok &= agree;
        r.both("geometric", if agree { "agree" } else { "DISAGREE" });
    }
    r.line(if ok { "EMBEDDING" } else { "NOT" });
    r.field("result", if ok { "EMBEDDING" } else { "NOT" });
    r.status = if ok { Status::Affirmative } else { Status::Negative };
    Ok(r)
}

pub fn extract(path: &Path, z: bool) -> Result<Report, String> {
    let sd: SurfaceDrawing = read(path)?;
    let mode = if z { PassMode::Z } else { PassMode::Z2 };
    let ex = extract_matrix(&sd, mode).map_err(fail)?;
    let g = sd.core().graph();
    let mut r = Report::new(Status::Affirmative);
    let ok = match &ex.matrix {
        ExtractedMatrix::Gf2(a) => {
            r.block("matrix", &a.to_string());
            let class = a.symmetry_class();
            r.both("parity_class", if class.is_even { "even" } else { "odd" });
            r.both("rank", rank_gf2(a));
            let pm = ParityMatrix::from_matrix(g, a).map_err(fail)?;
            let compatible = is_compatible_mod2(g, &pm).map_err(fail)?.is_some();
            r.both("compatible", compatible);
            let realized = crossing_parity_matrix(&ex.drawing) == pm;
            r.both("drawing_realizes", realized);
            compatible
        }
        ExtractedMatrix::Int(a) => {
            r.block("matrix", &a.to_string());
            r.both("rank", rank_q(a));
            let s = signed_crossing_matrix(&ex.drawing);
            let realized = independent_pairs(g).iter().all(|p| s.get(p.i, p.j) == a.get(p.i, p.j));
            r.both("drawing_realizes", realized);
            realized
        }
    };
    r.status = if ok { Status::Affirmative } else { Status::Negative };
    Ok(r)
}
