//! Verb handlers. Each returns the report text and whether the run found
//! nothing wrong; errors are domain errors.

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use circulant_wl::algebra::{find_extension_partner, find_isomorphism};
use circulant_wl::arith::{big_omega, gcd, units};
use circulant_wl::circulant::{
    base_tuple, extract_multiplier, is_normal, is_quasinormal, section_discreteness_check,
    singular_classes, singular_extension, CirculantScheme, ExtensionCheck, NormalityOptions,
    SectionKey,
};
use circulant_wl::dimension::{
    all_schemes, cayley_class_size, enumerate_graphs, enumerate_schemes, estimate_dimension,
    verify_main_theorem, verify_reduction_at, CorpusOptions, EstimateOptions,
};
use circulant_wl::io::{format_graph_shorthand, format_matrix, Input};
use circulant_wl::wl::{
    pebble_game_oracle, wl_m_equivalent, wl_m_refine, OracleOptions, WlOptions,
};
use circulant_wl::{enumerate_algebraic_isos, validate, AlgebraicIso, CoherentConfig};

use crate::input::{parse_orders, Loader};
use crate::{Cli, Format, Global, Theorem, Verb};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

struct Ctx<'a> {
    g: &'a Global,
    loader: Loader,
}

impl Ctx<'_> {
    fn wl(&self) -> WlOptions {
        WlOptions {
            memory_cap: self.g.memory_cap,
            max_m: self.g.max_m,
        }
    }

    fn corpus(&self) -> CorpusOptions {
        let mut o = CorpusOptions::default();
        if let Some(n) = self.g.max_n {
            o.max_n_undirected = n;
            o.max_n_directed = n;
            o.max_n_schemes = n;
        }
        o
    }

    fn normality(&self) -> NormalityOptions {
        NormalityOptions {
            max_n: self.g.normal_max_n,
        }
    }

    fn oracle(&self) -> OracleOptions {
        OracleOptions {
            max_n: self.g.oracle_max_n,
            max_m: self.g.oracle_max_m,
        }
    }

    /// Text or JSON; csv falls back to text for verbs without a table.
    fn emit(&self, text: String, value: Value) -> String {
        match self.g.format {
            Format::Json => json_text(&value),
            _ => text,
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output> {
    let ctx = Ctx {
        g: &cli.global,
        loader: Loader {
            cache_dir: cli.global.cache_dir.clone(),
        },
    };
    let corpus_verb = matches!(
        cli.verb,
        Verb::Enumerate { .. } | Verb::Dim { .. } | Verb::Verify { .. }
    );
    let threads = if corpus_verb {
        cli.global.jobs.unwrap_or(0)
    } else {
        1
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("starting worker pool")?;
    pool.install(|| dispatch(&ctx, &cli.verb))
}

fn dispatch(ctx: &Ctx, verb: &Verb) -> Result<Output> {
    match verb {
        Verb::Close(i) => close(ctx, i.spec()?),
        Verb::Validate(i) => validate_cmd(ctx, i.spec()?),
        Verb::Analyze(i) => analyze(ctx, i.spec()?),
        Verb::Sections(i) => sections(ctx, i.spec()?),
        Verb::Singular(i) => singular(ctx, i.spec()?),
        Verb::Extend {
            input,
            section,
            check,
        } => extend(ctx, input.spec()?, section.as_deref(), *check),
        Verb::Wlm {
            input,
            m,
            against,
            phi,
            oracle,
        } => wlm(
            ctx,
            input.spec()?,
            *m,
            against.as_deref(),
            phi.as_deref(),
            *oracle,
        ),
        Verb::Dim { input, m } => dim(ctx, input.spec()?, *m),
        Verb::Enumerate {
            n,
            directed,
            schemes,
            all,
        } => enumerate(ctx, *n, *directed, *schemes, *all),
        Verb::Iso { input, against } => iso(ctx, input.spec()?, against),
        Verb::Multiplier { input, unit, phi } => {
            multiplier(ctx, input.spec()?, *unit, phi.as_deref())
        }
        Verb::Verify {
            theorem,
            orders,
            directed,
            m,
            max_estimate_m,
        } => verify(ctx, *theorem, orders, *directed, *m, *max_estimate_m),
    }
}

fn join(s: &[usize]) -> String {
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    items.join(",")
}

fn sets_label(x: &CirculantScheme) -> String {
    let parts: Vec<String> = x
        .sets()
        .iter()
        .map(|t| format!("{{{}}}", join(t)))
        .collect();
    parts.join(" ")
}

fn parse_section(s: &str, n: usize) -> Result<SectionKey> {
    let (u, l) = s
        .split_once('/')
        .ok_or_else(|| anyhow!("section must be \"|U|/|L|\", got {s:?}"))?;
    let u: usize = u.trim().parse().context("section |U|")?;
    let l: usize = l.trim().parse().context("section |L|")?;
    if u == 0 || l == 0 || n % u != 0 || u % l != 0 {
        bail!("section {s}: need |L| dividing |U| dividing {n}");
    }
    Ok(SectionKey::new(u, l))
}

fn parse_phi(s: &str) -> Result<AlgebraicIso> {
    let text = if s.trim_start().starts_with('{') {
        s.to_string()
    } else {
        std::fs::read_to_string(s).with_context(|| format!("reading {s}"))?
    };
    serde_json::from_str(&text).context("algebraic isomorphism must be {\"map\": [...]}")
}

/// Aligned text, CSV or JSON rows.
struct Table {
    head: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(head: Vec<&'static str>) -> Self {
        Table {
            head,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let cell = |c: &str| {
                    if c.contains([',', '"', ' ']) {
                        format!("\"{}\"", c.replace('"', "\"\""))
                    } else {
                        c.to_string()
                    }
                };
                let mut s = self.head.join(",");
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|c| cell(c)).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: serde_json::Map<String, Value> = self
                            .head
                            .iter()
                            .zip(r)
                            .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                json_text(&Value::Array(rows))
            }
            Format::Text => {
                let mut width: Vec<usize> = self.head.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&width)
                        .map(|(c, &w)| format!("{c:<w$}"))
                        .collect();
                    format!("{}\n", padded.join("  ").trim_end())
                };
                let mut s = line(self.head.clone());
                for r in &self.rows {
                    s.push_str(&line(r.iter().map(String::as_str).collect()));
                }
                s
            }
        }
    }
}

fn close(ctx: &Ctx, spec: &str) -> Result<Output> {
    let (text, value) = match ctx.loader.input(spec)? {
        Input::Scheme { scheme, .. } | Input::Circulant { scheme, .. } => (
            scheme.to_file_string(),
            json!({"n": scheme.n(), "rank": scheme.rank(), "sets": scheme.sets()}),
        ),
        Input::Matrix(c) => {
            let labels: Vec<u64> = c.matrix().iter().map(|&v| v as u64).collect();
            let cc = CoherentConfig::closure(c.n(), &labels)?;
            let value = json!({"n": cc.n(), "rank": cc.rank(), "matrix": cc.matrix()});
            (format_matrix(&cc), value)
        }
        Input::Arcs(cc) => (
            format_matrix(&cc),
            json!({"n": cc.n(), "rank": cc.rank(), "matrix": cc.matrix()}),
        ),
    };
    Ok(Output::ok(ctx.emit(text, value)))
}

fn validate_cmd(ctx: &Ctx, spec: &str) -> Result<Output> {
    let (valid, rank, detail) = match ctx.loader.input(spec)? {
        Input::Matrix(c) => {
            let report = validate(&c);
            if report.is_valid() {
                (true, c.rank(), String::new())
            } else {
                let labels: Vec<u64> = c.matrix().iter().map(|&v| v as u64).collect();
                let closed = CoherentConfig::closure(c.n(), &labels)?;
                let detail = format!("{report}\nclosure has rank {}", closed.rank());
                (false, c.rank(), detail)
            }
        }
        Input::Scheme { scheme, coherent } => {
            let detail = format!(
                "invalid: partition is not coherent\nclosure has rank {}",
                scheme.rank()
            );
            (coherent, scheme.rank(), detail)
        }
        // inline graphs are closed on input
        Input::Circulant { scheme, .. } => (true, scheme.rank(), String::new()),
        Input::Arcs(cc) => (true, cc.rank(), String::new()),
    };
    let text = if valid {
        format!("valid, rank {rank}\n")
    } else {
        format!("{detail}\n")
    };
    let value = json!({"valid": valid, "rank": rank, "detail": detail});
    Ok(Output {
        text: ctx.emit(text, value),
        ok: valid,
    })
}

fn analyze(ctx: &Ctx, spec: &str) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let n = x.n();
    let normal = match is_normal(&x, &ctx.normality()) {
        Ok(b) => b.to_string(),
        Err(e) => {
            log::warn!("normality skipped: {e}");
            "skipped".to_string()
        }
    };
    let classes = singular_classes(&x);
    let singular = classes.iter().filter(|c| c.is_singular).count();
    let t = base_tuple(&x);
    let omega = big_omega(n);
    let text = format!(
        "n: {n}\nrank: {}\nsets: {}\nxgroups: {}\nradical: {}\nnormal: {normal}\n\
         quasinormal: {}\nsingular classes: {singular}\nbase tuple: ({})\n\
         omega: {omega}\nbound: {}\n",
        x.rank(),
        sets_label(&x),
        join(&x.xgroups()),
        x.radical_order(),
        is_quasinormal(&x),
        join(&t),
        omega + 3
    );
    let value = json!({
        "n": n, "rank": x.rank(), "sets": x.sets(), "xgroups": x.xgroups(),
        "radical": x.radical_order(), "normal": normal, "quasinormal": is_quasinormal(&x),
        "singularClasses": singular, "baseTuple": t, "omega": omega, "bound": omega + 3,
    });
    Ok(Output::ok(ctx.emit(text, value)))
}

fn sections(ctx: &Ctx, spec: &str) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let pc = x.projective_classes();
    let mut t = Table::new(vec![
        "section",
        "orders",
        "order",
        "rank",
        "trivial",
        "principal",
        "class",
    ]);
    for (i, s) in pc.sections.iter().enumerate() {
        t.push(vec![
            s.to_string(),
            format!("{}/{}", s.key.u, s.key.l),
            s.order().to_string(),
            s.scheme.rank().to_string(),
            s.is_trivial().to_string(),
            s.is_principal().to_string(),
            pc.class_of[i].to_string(),
        ]);
    }
    let mut text = t.render(Format::Text);
    let mut classes = Vec::new();
    for (c, members) in pc.classes.iter().enumerate() {
        let names: Vec<String> = members
            .iter()
            .map(|&i| pc.sections[i].to_string())
            .collect();
        text.push_str(&format!(
            "class {c}: order {}, {}: {}\n",
            pc.class_order(c),
            if pc.class_is_trivial(c) {
                "trivial"
            } else {
                "nontrivial"
            },
            names.join(" ")
        ));
        classes.push(json!({
            "order": pc.class_order(c), "trivial": pc.class_is_trivial(c), "sections": names,
        }));
    }
    let rows: Vec<Value> = pc
        .sections
        .iter()
        .enumerate()
        .map(|(i, s)| {
            json!({
                "section": s.to_string(), "u": s.key.u, "l": s.key.l, "order": s.order(),
                "sets": s.scheme.sets(), "trivial": s.is_trivial(),
                "principal": s.is_principal(), "class": pc.class_of[i],
            })
        })
        .collect();
    let value = json!({"n": x.n(), "sections": rows, "classes": classes});
    Ok(Output::ok(ctx.emit(text, value)))
}

fn singular(ctx: &Ctx, spec: &str) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let n = x.n();
    let mut text = String::new();
    let mut rows = Vec::new();
    let reports = singular_classes(&x);
    if reports.is_empty() {
        text.push_str("no trivial classes of order > 2\n");
    }
    for r in &reports {
        let members: Vec<String> = r.sections.iter().map(|k| k.display(n)).collect();
        let witness = r
            .witness
            .map(|(a, b)| format!("({}, {})", a.display(n), b.display(n)));
        text.push_str(&format!(
            "class of order {}: {}\n  singular: {}\n  smallest: {}\n  largest: {}\n  witness: {}\n",
            r.order,
            members.join(" "),
            r.is_singular,
            r.smallest.display(n),
            r.largest.display(n),
            witness.as_deref().unwrap_or("none")
        ));
        rows.push(json!({
            "order": r.order, "sections": members, "singular": r.is_singular,
            "smallest": r.smallest.display(n), "largest": r.largest.display(n),
            "witness": witness,
        }));
    }
    Ok(Output::ok(ctx.emit(text, Value::Array(rows))))
}

fn extend(ctx: &Ctx, spec: &str, section: Option<&str>, check: bool) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let key = match section {
        Some(s) => parse_section(s, x.n())?,
        None => {
            singular_classes(&x)
                .into_iter()
                .find(|c| c.is_singular)
                .ok_or_else(|| anyhow!("scheme has no singular class"))?
                .smallest
        }
    };
    let xs = singular_extension(&x, key)?;
    let mut text = xs.to_file_string();
    let mut value = json!({"n": xs.n(), "rank": xs.rank(), "sets": xs.sets()});
    if check {
        let c = ExtensionCheck::run(&x, key)?;
        let fields = [
            ("rank_increases", c.rank_increases),
            ("singular_count_drops_by_one", c.singular_count_drops_by_one),
            ("s1_s2_hold", c.s1_s2_hold),
            ("outside_l1_unchanged", c.outside_l1_unchanged),
            ("outside_u1_unchanged", c.outside_u1_unchanged),
            ("inside_u0_unchanged", c.inside_u0_unchanged),
            ("independent_of_member", c.independent_of_member),
        ];
        for (k, v) in fields {
            text.push_str(&format!("# {k}: {v}\n"));
            value[k] = json!(v);
        }
    }
    Ok(Output::ok(ctx.emit(text, value)))
}

fn wlm(
    ctx: &Ctx,
    spec: &str,
    m: usize,
    against: Option<&str>,
    phi: Option<&str>,
    oracle: bool,
) -> Result<Output> {
    let x = ctx.loader.config(spec)?;
    let wl = ctx.wl();
    let Some(against) = against else {
        if phi.is_some() || oracle {
            bail!("--phi and --oracle need --against");
        }
        let mc = wl_m_refine(&x, m, &wl)?;
        let hist = mc.histogram();
        let mut text = format!("n: {}\nm: {m}\nrank: {}\ncolor  tuples\n", x.n(), mc.rank());
        for (c, k) in hist.iter().enumerate() {
            text.push_str(&format!("{c}  {k}\n"));
        }
        let value = json!({"n": x.n(), "m": m, "rank": mc.rank(), "histogram": hist});
        return Ok(Output::ok(ctx.emit(text, value)));
    };
    let y = ctx.loader.config(against)?;
    let maps = match phi {
        Some(p) => {
            let phi = parse_phi(p)?;
            phi.verify(&x, &y)?;
            vec![phi]
        }
        None => enumerate_algebraic_isos(&x, &y),
    };
    let mut text = format!("m: {m}\nalgebraic isomorphisms: {}\n", maps.len());
    let mut rows = Vec::new();
    let mut ok = true;
    for phi in &maps {
        let eq = wl_m_equivalent(&x, &y, phi, m, &wl)?;
        let game = if oracle {
            Some(pebble_game_oracle(&x, &y, phi, m, &ctx.oracle())?.has_perfect_matching())
        } else {
            None
        };
        let verdict = if eq { "equivalent" } else { "not equivalent" };
        text.push_str(&format!("[{}] {verdict}", list_u32(&phi.map)));
        if let Some(g) = game {
            let agree = g == eq;
            ok &= agree;
            text.push_str(&format!(
                "; game {}",
                if agree { "agrees" } else { "DISAGREES" }
            ));
        }
        text.push('\n');
        rows.push(json!({"phi": phi.map, "equivalent": eq, "game": game}));
    }
    let value = json!({"m": m, "results": rows});
    Ok(Output {
        text: ctx.emit(text, value),
        ok,
    })
}

fn list_u32(s: &[u32]) -> String {
    let items: Vec<String> = s.iter().map(|d| d.to_string()).collect();
    items.join(",")
}

fn dim(ctx: &Ctx, spec: &str, max_m: usize) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let reference = enumerate_schemes(x.n(), &ctx.corpus())?.schemes;
    let opts = EstimateOptions {
        max_m,
        wl: ctx.wl(),
    };
    let r = estimate_dimension(&x, &reference, &opts)?;
    let mut text = format!(
        "n: {}\nrank: {}\nreference schemes: {}\nestimate: {}\nbound: {}\nwitnesses: {}\n",
        r.n,
        r.rank,
        reference.len(),
        r.estimate_label(),
        r.bound,
        r.witnesses.len()
    );
    for w in &r.witnesses {
        let sep = w
            .separated_at()
            .map_or(format!(">{max_m}"), |m| m.to_string());
        text.push_str(&format!(
            "  [{}] to {}: separated at m = {sep}\n",
            list_u32(&w.phi.map),
            sets_label(&reference[w.target])
        ));
    }
    let value = json!({
        "report": r,
        "targets": r.witnesses.iter().map(|w| reference[w.target].sets()).collect::<Vec<_>>(),
    });
    Ok(Output {
        text: ctx.emit(text, value),
        ok: r.within_bound(),
    })
}

fn enumerate(ctx: &Ctx, n: usize, directed: bool, schemes: bool, all: bool) -> Result<Output> {
    let o = ctx.corpus();
    let mut t;
    if schemes {
        let list = if all {
            all_schemes(n, &o)?
        } else {
            enumerate_schemes(n, &o)?.schemes
        };
        t = Table::new(vec!["order", "rank", "sets"]);
        for x in &list {
            t.push(vec![n.to_string(), x.rank().to_string(), sets_label(x)]);
        }
    } else {
        if all {
            bail!("--all applies to --schemes");
        }
        let c = enumerate_graphs(n, directed, &o)?;
        t = Table::new(vec!["order", "graph", "rank", "classSize"]);
        for (g, &si) in c.graphs.iter().zip(&c.graph_scheme) {
            t.push(vec![
                n.to_string(),
                format_graph_shorthand(n, g),
                c.schemes[si].rank().to_string(),
                cayley_class_size(g, n).to_string(),
            ]);
        }
    }
    Ok(Output::ok(t.render(ctx.g.format)))
}

fn iso(ctx: &Ctx, spec: &str, against: &str) -> Result<Output> {
    let x = ctx.loader.config(spec)?;
    let y = ctx.loader.config(against)?;
    let maps = enumerate_algebraic_isos(&x, &y);
    let mut text = format!("algebraic isomorphisms: {}\n", maps.len());
    let mut rows = Vec::new();
    for phi in &maps {
        let f = find_isomorphism(&x, &y, phi);
        match &f {
            Some(f) => text.push_str(&format!(
                "[{}] induced by [{}]\n",
                list_u32(&phi.map),
                join(&f.map)
            )),
            None => text.push_str(&format!("[{}] not induced\n", list_u32(&phi.map))),
        }
        rows.push(json!({"phi": phi.map, "isomorphism": f.map(|f| f.map)}));
    }
    Ok(Output::ok(ctx.emit(text, Value::Array(rows))))
}

fn multiplier(ctx: &Ctx, spec: &str, unit: Option<usize>, phi: Option<&str>) -> Result<Output> {
    let x = ctx.loader.scheme(spec)?;
    let n = x.n();
    let cc = x.config();
    let t = base_tuple(&x);
    let (phi, partner) = match (unit, phi) {
        (Some(u), _) => {
            if gcd(u, n) != 1 {
                bail!("{u} is not a unit modulo {n}");
            }
            let map = (0..x.rank())
                .map(|c| x.set_of(u * x.sets()[c][0] % n))
                .collect();
            let partner = t.iter().map(|&g| u * g % n).collect();
            (AlgebraicIso { map }, partner)
        }
        (None, Some(p)) => {
            let phi = parse_phi(p)?;
            phi.verify(cc, cc)?;
            let partner = find_extension_partner(cc, cc, &phi, &t)
                .ok_or_else(|| anyhow!("φ has no extension at the base tuple"))?;
            (phi, partner)
        }
        (None, None) => (AlgebraicIso::identity(x.rank()), t.clone()),
    };
    let m = extract_multiplier(&x, &phi, &t, &partner)?;
    let mut text = format!(
        "base tuple: ({})\npartner: ({})\n",
        join(&m.x),
        join(&m.x_prime)
    );
    let mut rows = Vec::new();
    for (k, sigma) in &m.sigma {
        let u = m.unit.get(k).copied().flatten();
        let ul = u.map_or("none".to_string(), |u| u.to_string());
        text.push_str(&format!(
            "{}: sigma [{}] unit {ul}\n",
            k.display(n),
            join(sigma)
        ));
        rows.push(json!({"section": k.display(n), "sigma": sigma, "unit": u}));
    }
    for v in &m.violations {
        text.push_str(&format!("violation: {v}\n"));
    }
    let value = json!({
        "tuple": m.x, "partner": m.x_prime, "sections": rows, "violations": m.violations,
    });
    Ok(Output {
        text: ctx.emit(text, value),
        ok: m.is_valid(),
    })
}

fn verify(
    ctx: &Ctx,
    theorem: Theorem,
    orders: &str,
    directed: bool,
    m: usize,
    max_estimate_m: usize,
) -> Result<Output> {
    let orders = parse_orders(orders)?;
    let o = ctx.corpus();
    let format = ctx.g.format;
    let (text, ok) = match theorem {
        Theorem::Main => {
            let opts = EstimateOptions {
                max_m: max_estimate_m,
                wl: ctx.wl(),
            };
            let s = verify_main_theorem(orders, directed, &o, &opts)?;
            let text = match format {
                Format::Csv => s.to_csv(),
                Format::Json => json_text(&serde_json::to_value(&s)?),
                Format::Text => format!(
                    "{}graphs: {}, at m = 2: {:.1}%, within bound: {}\n",
                    s.to_table(),
                    s.graph_count(),
                    100.0 * s.fraction_at_two(),
                    s.all_within_bound()
                ),
            };
            (text, s.all_within_bound())
        }
        Theorem::Reduction => verify_reduction_run(ctx, &orders, m)?,
        Theorem::Muzychuk => verify_muzychuk(&orders, &o, format)?,
        Theorem::Schur => {
            let o = CorpusOptions {
                multiplier_pruning: false,
                ..o
            };
            let mut t = Table::new(vec!["order", "schemes", "pairs", "violations"]);
            let mut ok = true;
            for &n in &orders {
                let list = all_schemes(n, &o)?;
                let us = units(n);
                let bad: usize = list
                    .par_iter()
                    .map(|x| {
                        us.iter()
                            .filter(|&&u| !x.multiplier_permutes_sets(u))
                            .count()
                    })
                    .sum();
                ok &= bad == 0;
                t.push(vec![
                    n.to_string(),
                    list.len().to_string(),
                    (list.len() * us.len()).to_string(),
                    bad.to_string(),
                ]);
            }
            (t.render(format), ok)
        }
        Theorem::Discreteness => {
            let mut t = Table::new(vec![
                "order",
                "sets",
                "baseTuple",
                "length",
                "maxLength",
                "discrete",
            ]);
            let mut ok = true;
            for &n in &orders {
                let list: Vec<CirculantScheme> = all_schemes(n, &o)?
                    .into_iter()
                    .filter(is_quasinormal)
                    .collect();
                let rows: Vec<(Vec<String>, bool)> = list
                    .par_iter()
                    .map(|x| -> Result<_> {
                        let tup = base_tuple(x);
                        let r = section_discreteness_check(x, &tup)?;
                        let max = big_omega(n) + 1;
                        let good = r.all_discrete() && tup.len() <= max;
                        Ok((
                            vec![
                                n.to_string(),
                                sets_label(x),
                                join(&tup),
                                tup.len().to_string(),
                                max.to_string(),
                                r.all_discrete().to_string(),
                            ],
                            good,
                        ))
                    })
                    .collect::<Result<_>>()?;
                for (row, good) in rows {
                    ok &= good;
                    t.push(row);
                }
            }
            (t.render(format), ok)
        }
    };
    Ok(Output { text, ok })
}

fn verify_reduction_run(ctx: &Ctx, orders: &[usize], m: usize) -> Result<(String, bool)> {
    let o = ctx.corpus();
    let wl = ctx.wl();
    let mut t = Table::new(vec![
        "order",
        "sets",
        "section",
        "rank",
        "extendedRank",
        "cases",
        "holds",
    ]);
    let mut ok = true;
    for &n in orders {
        let list: Vec<CirculantScheme> = all_schemes(n, &o)?
            .into_iter()
            .filter(|x| !is_quasinormal(x))
            .collect();
        let rows: Vec<Vec<(Vec<String>, bool)>> = list
            .par_iter()
            .map(|x| -> Result<_> {
                let mut out = Vec::new();
                for c in singular_classes(x).into_iter().filter(|c| c.is_singular) {
                    let r = verify_reduction_at(x, c.smallest, m, &wl)?;
                    out.push((
                        vec![
                            n.to_string(),
                            sets_label(x),
                            c.smallest.display(n),
                            r.rank.to_string(),
                            r.extended_rank.to_string(),
                            r.cases.len().to_string(),
                            r.holds().to_string(),
                        ],
                        r.holds(),
                    ));
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        for (row, good) in rows.into_iter().flatten() {
            ok &= good;
            t.push(row);
        }
    }
    Ok((t.render(ctx.g.format), ok))
}

fn verify_muzychuk(orders: &[usize], o: &CorpusOptions, format: Format) -> Result<(String, bool)> {
    let mut t = Table::new(vec!["order", "schemes", "isomorphisms", "notInduced"]);
    let mut ok = true;
    let mut findings = Vec::new();
    for &n in orders {
        let schemes = enumerate_schemes(n, o)?.schemes;
        let k = schemes.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .filter(|&(i, j)| schemes[i].rank() == schemes[j].rank())
            .collect();
        let results: Vec<(usize, Vec<String>)> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let (x, y) = (schemes[i].config(), schemes[j].config());
                let maps = enumerate_algebraic_isos(x, y);
                let bad = maps
                    .iter()
                    .filter(|phi| find_isomorphism(x, y, phi).is_none())
                    .map(|phi| {
                        format!(
                            "n={n}: {} -> {} via [{}]",
                            sets_label(&schemes[i]),
                            sets_label(&schemes[j]),
                            list_u32(&phi.map)
                        )
                    })
                    .collect();
                (maps.len(), bad)
            })
            .collect();
        let total: usize = results.iter().map(|r| r.0).sum();
        let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
        ok &= bad.is_empty();
        t.push(vec![
            n.to_string(),
            k.to_string(),
            total.to_string(),
            bad.len().to_string(),
        ]);
        findings.extend(bad);
    }
    let mut text = t.render(format);
    if format == Format::Text {
        for f in findings {
            text.push_str(&format!("not induced: {f}\n"));
        }
    }
    Ok((text, ok))
}
