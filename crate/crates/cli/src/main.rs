//! Command-line surface: loads resolution data, runs the region/wall/bound
//! computations, and emits versioned JSON documents and SVG figures.
//!
//! Exit codes: 1 validation failure, 2 budget exhaustion, 3 I/O error.

mod output;
mod svg;

use bsloci::*;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bsloci",
    version,
    about = "Exact rational bounds for zero loci of Bernstein-Sato ideals from log-resolution data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Input resolution-data file (bsloci-1 JSON).
    input: PathBuf,
    /// Write the document here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BoxArg {
    /// Wall box override, `lo:hi` per coordinate, comma-separated
    /// (e.g. `0:5/2,0:7/2`). Default: KLT bounding box expanded by 1/2.
    #[arg(long = "box", value_name = "BOX")]
    wall_box: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// LCT polytope with its facet/divisor pairing.
    Lct(CommonArgs),
    /// Open KLT region and the bounding box of its closure.
    Klt(CommonArgs),
    /// Jumping-wall complex: candidates, cells, patterns, jump facets.
    Walls {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wall_box: BoxArg,
    },
    /// Bound component sets, one per route, plus the upstairs factorization.
    Bounds {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wall_box: BoxArg,
        /// Shift bound for the upper candidate family.
        #[arg(long = "c-max")]
        c_max: Option<u64>,
        /// Stratum index for the upstairs factorization (default: all divisors).
        #[arg(long)]
        stratum: Option<usize>,
    },
    /// Full lower/upper report with inclusion flags.
    Report {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wall_box: BoxArg,
        #[arg(long = "c-max")]
        c_max: Option<u64>,
        /// Reference ideal: JSON list of {"coeffs": [...], "b": ...} factors.
        #[arg(long)]
        reference: Option<PathBuf>,
    },
    /// Brute-force oracles: grid patterns and vertex enumeration.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wall_box: BoxArg,
        /// Grid denominator (>= 2).
        #[arg(long, default_value_t = 7)]
        denominator: u64,
        /// Also run seeded random-instance comparisons.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Two-panel SVG: weight-space regions and walls, s-space components.
    Plot {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wall_box: BoxArg,
        #[arg(long = "c-max")]
        c_max: Option<u64>,
        #[arg(long)]
        reference: Option<PathBuf>,
        /// For r > 2: fix coordinates, e.g. `3=1/2,4=0` (1-based), leaving two free.
        #[arg(long)]
        slice: Option<String>,
    },
}

enum CliError {
    Validation(String),
    Budget(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Io(_) => 3,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Budget(m) | CliError::Io(m) => m,
        }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PolyhedraError> for CliError {
    fn from(e: PolyhedraError) -> Self {
        match e {
            PolyhedraError::ArrangementTooLarge { .. } | PolyhedraError::Budget { .. } => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<WallsError> for CliError {
    fn from(e: WallsError) -> Self {
        match e {
            WallsError::Polyhedra(p) => p.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn cell_budget() -> Result<usize, CliError> {
    match std::env::var("BSLOCI_CELL_BUDGET") {
        Err(_) => Ok(DEFAULT_CELL_BUDGET),
        Ok(s) => s
            .parse()
            .map_err(|_| CliError::Validation(format!("BSLOCI_CELL_BUDGET is not a count: `{s}`"))),
    }
}

fn load_and_validate(path: &std::path::Path) -> Result<Document, CliError> {
    let doc = load_path(path)?;
    let violations = validate(&doc);
    if !violations.is_empty() {
        let lines: Vec<String> = violations.iter().map(|v| format!("  {v}")).collect();
        return Err(CliError::Validation(format!(
            "invalid resolution data:\n{}",
            lines.join("\n")
        )));
    }
    Ok(doc)
}

fn parse_box(spec: &str, r: usize) -> Result<(Vec<Rat>, Vec<Rat>), CliError> {
    let bad = |msg: &str| CliError::Validation(format!("invalid --box `{spec}`: {msg}"));
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != r {
        return Err(bad(&format!("expected {r} comma-separated `lo:hi` ranges")));
    }
    let mut lo = Vec::with_capacity(r);
    let mut hi = Vec::with_capacity(r);
    for part in parts {
        let Some((l, h)) = part.split_once(':') else {
            return Err(bad("each range must be `lo:hi`"));
        };
        let l = parse_rat(l).map_err(|e| bad(&e.to_string()))?;
        let h = parse_rat(h).map_err(|e| bad(&e.to_string()))?;
        if num::Signed::is_negative(&l) || l >= h {
            return Err(bad("ranges must satisfy 0 <= lo < hi"));
        }
        lo.push(l);
        hi.push(h);
    }
    Ok((lo, hi))
}

fn resolve_box(arg: &BoxArg, doc: &Document) -> Result<(Vec<Rat>, Vec<Rat>), CliError> {
    match &arg.wall_box {
        Some(spec) => parse_box(spec, doc.data.r),
        None => Ok(default_box(&doc.data, &doc.weight)?),
    }
}

fn emit(value: &Value, output: &Option<PathBuf>) -> Result<(), CliError> {
    let text = output::to_canonical_string(value);
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Lct(common) => {
            let doc = load_and_validate(&common.input)?;
            let lct = lct_polytope(&doc.data)?;
            emit(&output::lct_doc(&doc, &lct), &common.output)
        }
        Command::Klt(common) => {
            let doc = load_and_validate(&common.input)?;
            let klt = klt_region(&doc.data, &doc.weight)?;
            emit(&output::klt_doc(&doc, &klt), &common.output)
        }
        Command::Walls { common, wall_box } => {
            let doc = load_and_validate(&common.input)?;
            let (lo, hi) = resolve_box(&wall_box, &doc)?;
            let complex = wall_complex(&doc.data, &doc.test_elements, &lo, &hi, cell_budget()?)?;
            emit(&output::walls_doc(&doc, &complex), &common.output)
        }
        Command::Bounds {
            common,
            wall_box,
            c_max,
            stratum,
        } => {
            let doc = load_and_validate(&common.input)?;
            let (lo, hi) = resolve_box(&wall_box, &doc)?;
            let budget = cell_budget()?;
            let c_max = c_max.unwrap_or_else(|| default_c_max(&doc.data, &doc.weight));
            let (prop13, families) = prop13_components(&doc.data, &doc.weight);
            let lct = lct_facet_components(&doc.data, &doc.weight)?;
            let jumping = jumping_wall_components(
                &doc.data,
                &doc.weight,
                &doc.test_elements,
                &lo,
                &hi,
                budget,
            )?;
            let upper = upper_family(&doc.data, c_max);
            let stratum_divisors: Option<&[usize]> = match stratum {
                None => None,
                Some(i) => Some(
                    doc.data
                        .strata
                        .get(i)
                        .ok_or_else(|| {
                            CliError::Validation(format!(
                                "stratum index {i} out of range ({} strata)",
                                doc.data.strata.len()
                            ))
                        })?
                        .as_slice(),
                ),
            };
            let upstairs = upstairs_b(&doc.data, &doc.weight, stratum_divisors);
            let value = json!({
                "version": SCHEMA_VERSION,
                "command": "bounds",
                "r": doc.data.r,
                "a": doc.weight.a,
                "c_max": c_max,
                "c_max_note": output::C_MAX_NOTE,
                "model_note": output::MODEL_NOTE,
                "box": { "lo": output::point(&lo), "hi": output::point(&hi) },
                "prop13": {
                    "components": output::components(&prop13),
                    "families": families.iter().map(|f| json!({
                        "divisor": f.divisor,
                        "m": f.m,
                        "witness": output::factored(&f.witness),
                    })).collect::<Vec<_>>(),
                },
                "lct_facets": output::components(&lct),
                "jumping_walls": output::components(&jumping),
                "upper": output::components(&upper),
                "upstairs": output::factored(&upstairs),
            });
            emit(&value, &common.output)
        }
        Command::Report {
            common,
            wall_box,
            c_max,
            reference,
        } => {
            let doc = load_and_validate(&common.input)?;
            let (lo, hi) = resolve_box(&wall_box, &doc)?;
            let reference = read_reference(&reference, doc.data.r)?;
            let rep = report(
                &doc.data,
                &doc.weight,
                &doc.test_elements,
                Some((lo, hi)),
                c_max,
                reference,
                cell_budget()?,
            )?;
            let lct = lct_polytope(&doc.data)?;
            let klt = klt_region(&doc.data, &doc.weight)?;
            emit(&output::report_doc(&doc, &rep, &lct, &klt), &common.output)
        }
        Command::Verify {
            common,
            wall_box,
            denominator,
            seed,
        } => {
            let doc = load_and_validate(&common.input)?;
            let (lo, hi) = resolve_box(&wall_box, &doc)?;
            let value = run_verify(&doc, &lo, &hi, denominator, seed)?;
            let clean = value["grid"]["mismatches"]
                .as_array()
                .is_some_and(Vec::is_empty)
                && value["vertex"]["matches"] != Value::Bool(false)
                && value["random"]["mismatches"] != Value::Bool(true);
            emit(&value, &common.output)?;
            if clean {
                Ok(())
            } else {
                Err(CliError::Validation("oracle mismatches found".to_string()))
            }
        }
        Command::Plot {
            common,
            wall_box,
            c_max,
            reference,
            slice,
        } => {
            let doc = load_and_validate(&common.input)?;
            let (lo, hi) = resolve_box(&wall_box, &doc)?;
            let reference = read_reference(&reference, doc.data.r)?;
            let scene = build_scene(&doc, &lo, &hi, c_max, reference, &slice)?;
            let text = svg::render(&scene);
            match &common.output {
                None => {
                    print!("{text}");
                    Ok(())
                }
                Some(path) => std::fs::write(path, text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            }
        }
    }
}

fn read_reference(path: &Option<PathBuf>, r: usize) -> Result<Option<Vec<Component>>, CliError> {
    let Some(path) = path else { return Ok(None) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_reference(&text, r)
        .map(Some)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn run_verify(
    doc: &Document,
    lo: &[Rat],
    hi: &[Rat],
    denominator: u64,
    seed: Option<u64>,
) -> Result<Value, CliError> {
    let budget = cell_budget()?;
    let complex = wall_complex(&doc.data, &doc.test_elements, lo, hi, budget)?;
    let grid = grid_pattern_oracle(&doc.data, &doc.test_elements, &complex, denominator)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    // vertex oracle on the LCT halfspaces, when within its budget
    let lct = lct_polytope(&doc.data)?;
    let lct_system: Vec<HalfSpace> = {
        let mut hs: Vec<HalfSpace> = doc
            .data
            .divisors
            .iter()
            .map(|d| {
                let coeffs: Vec<Rat> = d.orders.iter().map(|&n| rat_u64(n)).collect();
                HalfSpace::le(AffineForm::new(coeffs, -rat_u64(d.k + 1)))
            })
            .collect();
        for j in 0..doc.data.r {
            let mut coeffs = vec![Rat::from_integer(0.into()); doc.data.r];
            coeffs[j] = -rat_u64(1);
            hs.push(HalfSpace::le(AffineForm::new(
                coeffs,
                Rat::from_integer(0.into()),
            )));
        }
        hs
    };
    let vertex = match vertex_oracle(&lct_system, doc.data.r) {
        Err(_) => json!({"skipped": "outside the oracle budget"}),
        Ok(oracle_vertices) => {
            let mut engine = lct.polyhedron.vertices().to_vec();
            engine.sort();
            json!({
                "matches": engine == oracle_vertices,
                "vertices": output::points(&oracle_vertices),
            })
        }
    };

    let random = match seed {
        None => Value::Null,
        Some(seed) => random_trials(seed)?,
    };

    Ok(json!({
        "version": SCHEMA_VERSION,
        "command": "verify",
        "denominator": denominator,
        "grid": {
            "checked": grid.checked,
            "mismatches": grid.mismatches.iter().map(|m| json!({
                "input": m.input, "expected": m.expected, "got": m.got,
            })).collect::<Vec<_>>(),
        },
        "vertex": vertex,
        "random": random,
    }))
}

/// splitmix64; enough randomness for reproducible oracle trials.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_trials(seed: u64) -> Result<Value, CliError> {
    let mut rng = SplitMix(seed);
    let mut vertex_checked = 0usize;
    let mut vertex_mismatches = 0usize;
    for _ in 0..50 {
        let dim = 2 + (rng.below(2) as usize); // 2 or 3
        let m = 3 + rng.below(8) as usize;
        let hs: Vec<HalfSpace> = (0..m)
            .map(|_| {
                let coeffs: Vec<Rat> = (0..dim).map(|_| rat(rng.below(9) as i64 - 4, 1)).collect();
                HalfSpace::le(AffineForm::new(coeffs, rat(rng.below(9) as i64 - 4, 1)))
            })
            .filter(|h| !h.form.is_zero())
            .collect();
        let oracle = match vertex_oracle(&hs, dim) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let poly = Polyhedron::intersect(&hs, dim)?;
        let mut engine = poly.vertices().to_vec();
        engine.sort();
        vertex_checked += 1;
        if engine != oracle {
            vertex_mismatches += 1;
        }
    }
    let mut grid_checked = 0usize;
    let mut grid_mismatches = 0usize;
    for _ in 0..10 {
        let n_div = 1 + rng.below(4) as usize;
        let divisors: Vec<Divisor> = (0..n_div)
            .map(|i| {
                let orders = vec![rng.below(3), rng.below(3)];
                let k = rng.below(3);
                Divisor {
                    name: format!("E{i}"),
                    orders,
                    k,
                    kind: if k == 0 {
                        DivisorKind::StrictTransform
                    } else {
                        DivisorKind::Exceptional
                    },
                }
            })
            .collect();
        let data = ResolutionData {
            r: 2,
            divisors,
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        // keep only instances where every column is nonzero
        if (0..2).any(|j| data.divisors.iter().all(|d| d.orders[j] == 0)) {
            continue;
        }
        let elements: Vec<TestElement> = (0..6)
            .map(|i| TestElement {
                name: format!("h{i}"),
                orders: (0..n_div).map(|_| rng.below(4)).collect(),
            })
            .collect();
        let side = rat(2 + rng.below(3) as i64, 1);
        let lo = vec![Rat::from_integer(0.into()), Rat::from_integer(0.into())];
        let hi = vec![side.clone(), side];
        let complex = wall_complex(&data, &elements, &lo, &hi, DEFAULT_CELL_BUDGET)?;
        let report = grid_pattern_oracle(&data, &elements, &complex, 7)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        grid_checked += report.checked;
        grid_mismatches += report.mismatches.len();
    }
    Ok(json!({
        "seed": format!("{:#x}", seed),
        "vertex_sets_checked": vertex_checked,
        "vertex_mismatches": vertex_mismatches,
        "grid_points_checked": grid_checked,
        "grid_mismatches": grid_mismatches,
        "mismatches": vertex_mismatches + grid_mismatches > 0,
    }))
}

fn parse_slice(spec: &str, r: usize) -> Result<Vec<(usize, Rat)>, CliError> {
    let bad = |msg: &str| CliError::Validation(format!("invalid --slice `{spec}`: {msg}"));
    let mut fixed = Vec::new();
    for part in spec.split(',') {
        let Some((idx, val)) = part.split_once('=') else {
            return Err(bad("each entry must be `index=value`"));
        };
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| bad("index must be a 1-based integer"))?;
        if idx == 0 || idx > r {
            return Err(bad(&format!("index {idx} out of range 1..={r}")));
        }
        let val = parse_rat(val).map_err(|e| bad(&e.to_string()))?;
        if num::Signed::is_negative(&val) {
            return Err(bad("fixed values must be nonnegative"));
        }
        fixed.push((idx - 1, val));
    }
    Ok(fixed)
}

fn substitute(form: &AffineForm, fixed: &[(usize, Rat)], free: &[usize]) -> AffineForm {
    let mut constant = form.constant.clone();
    for (j, v) in fixed {
        constant += &form.coeffs[*j] * v;
    }
    AffineForm::new(
        free.iter().map(|&j| form.coeffs[j].clone()).collect(),
        constant,
    )
}

fn embed(p2: &[Rat], fixed: &[(usize, Rat)], free: &[usize], r: usize) -> Vec<Rat> {
    let mut full = vec![Rat::from_integer(0.into()); r];
    for (j, v) in fixed {
        full[*j] = v.clone();
    }
    for (slot, &j) in free.iter().enumerate() {
        full[j] = p2[slot].clone();
    }
    full
}

fn build_scene(
    doc: &Document,
    lo: &[Rat],
    hi: &[Rat],
    c_max: Option<u64>,
    reference: Option<Vec<Component>>,
    slice: &Option<String>,
) -> Result<svg::Scene, CliError> {
    let r = doc.data.r;
    let fixed: Vec<(usize, Rat)> = match slice {
        Some(spec) => parse_slice(spec, r)?,
        None => Vec::new(),
    };
    let free: Vec<usize> = (0..r)
        .filter(|j| !fixed.iter().any(|(i, _)| i == j))
        .collect();
    if free.len() != 2 {
        return Err(CliError::Validation(format!(
            "plot needs exactly two free coordinates; r = {r} with {} fixed by --slice",
            fixed.len()
        )));
    }
    let budget = cell_budget()?;
    let lo2 = vec![lo[free[0]].clone(), lo[free[1]].clone()];
    let hi2 = vec![hi[free[0]].clone(), hi[free[1]].clone()];

    // regions, sliced to the plot plane
    let slice_poly = |poly: &Polyhedron| -> Result<Vec<Vec<Rat>>, CliError> {
        let hs: Vec<HalfSpace> = poly
            .hrep()
            .iter()
            .map(|h| HalfSpace {
                form: substitute(&h.form, &fixed, &free),
                sense: h.sense,
            })
            .filter(|h| !h.form.is_zero())
            .collect();
        let p = Polyhedron::intersect(&hs, 2)?;
        Ok(p.point_generators().into_iter().cloned().collect())
    };
    let lct = lct_polytope(&doc.data)?;
    let klt = klt_region(&doc.data, &doc.weight)?;
    let lct2 = slice_poly(&lct.polyhedron)?;
    let klt2 = slice_poly(&klt.polyhedron)?;

    // candidate walls in the plane
    let candidates = candidate_forms(&doc.data, lo, hi);
    let mut forms2: Vec<AffineForm> = Vec::new();
    for c in &candidates {
        let s = substitute(&c.form, &fixed, &free);
        if s.coeffs.iter().all(num::Zero::is_zero) {
            continue; // wall parallel to (or containing) the slice plane
        }
        let c2 = s.canonical_hyperplane();
        if !forms2.contains(&c2) {
            forms2.push(c2);
        }
    }
    let arrangement = decompose(&lo2, &hi2, &forms2, budget)?;
    let patterns: Vec<MembershipPattern> = arrangement
        .cells
        .iter()
        .map(|cell| {
            let full = embed(&cell.sample, &fixed, &free, r);
            pattern(&full, &doc.data, &doc.test_elements)
        })
        .collect();

    let mut jump_segments = Vec::new();
    for facet in &arrangement.facets {
        let high = &patterns[facet.high_cell];
        let low = &patterns[facet.low_cell];
        if !high.is_strict_subset(low) {
            continue;
        }
        // closed facet segment: its endpoints are the vertices
        let mut system: Vec<HalfSpace> =
            vec![HalfSpace::eq(arrangement.forms[facet.form_index].clone())];
        let low_signs = &arrangement.cells[facet.low_cell].signs;
        for (j, form) in arrangement.forms.iter().enumerate() {
            if j == facet.form_index {
                continue;
            }
            system.push(if low_signs[j] < 0 {
                HalfSpace::le(form.clone())
            } else {
                HalfSpace::le(form.negated())
            });
        }
        system.extend(box_halfspaces(&lo2, &hi2));
        let seg = Polyhedron::intersect(&system, 2)?;
        let vs = seg.vertices();
        if vs.len() == 2 {
            jump_segments.push((
                vs[0].clone(),
                vs[1].clone(),
                arrangement.forms[facet.form_index].clone(),
            ));
        }
    }

    // s-space components from the full-dimensional data
    let rep = report(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        Some((lo.to_vec(), hi.to_vec())),
        c_max,
        reference,
        budget,
    )?;
    let project = |cs: &[Component]| -> Vec<Component> {
        cs.iter()
            .map(|c| Component {
                form: substitute(&c.form, &fixed, &free),
                provenance: c.provenance.clone(),
                sources: c.sources.clone(),
            })
            .filter(|c| c.form.coeffs.iter().any(|x| !num::Zero::is_zero(x)))
            .collect()
    };
    let label = |j: usize| format!("lambda{}", j + 1);
    Ok(svg::Scene {
        axis_labels: (label(free[0]), label(free[1])),
        box_lo: lo2,
        box_hi: hi2,
        lct: lct2,
        klt: klt2,
        jump_segments,
        components: project(&rep.lower),
        reference: rep.reference.as_deref().map(project).unwrap_or_default(),
    })
}
