//! Subcommand pipelines producing a text report and a JSON document.

use serde_json::{json, Map, Value};

use crate::blowup::{labeled_lines, CubicSurface, LabeledLines, SixPoints};
use crate::config::{orbit_sizes, AutomorphismGroup, Configurations, DoubleSixFamily, EnneahedronKind, LineLabel, Trio};
use crate::determinantal::{
    components_gcd, count_fixed_surface_points, cubo_cubic, det_rep, grassmann_nets, grassmann_param, plane_image_cubic_dim,
    restricts_to_param, triangle_sextics,
};
use crate::error::Result;
use crate::field::{FieldDescriptor, FieldElement as Fe};
use crate::forms::{cayley_salmon, cs_from_hexahedral, enumerate_hexahedral, hexahedral_from_cs, hexahedral_lines, tritangent_plane, HexahedralForm};
use crate::hexagram::{hexagram_config, pentahedra, verify_all_hexagrams};
use crate::io::{field_to_json, fe_to_json, line_to_json, lines_to_json, plane_to_json, point_to_json, poly_to_json, vec_to_json, SCHEMA};
use crate::poly::MultiPoly;
use crate::projgeom::ProjPlane;
use crate::quadrics::{
    desmic_partition, intersection_point_grouping, line_pair_nodes, quadric_web, quartics_singular_at, sample_residual_quadrics,
    quadric_span, six_line_quadric_census,
};
use crate::species::{involution_census, species_pipeline};
use crate::verify::{cs_indices, desmic_planes, pick, rational_hexahedral, verify_all, Context, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Construct,
    Configurations,
    CayleySalmon,
    Hexahedral,
    Determinantal,
    CuboCubic,
    Desmic,
    Hexagram,
    Species,
    Group,
    VerifyAll,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::Construct,
        Command::Configurations,
        Command::CayleySalmon,
        Command::Hexahedral,
        Command::Determinantal,
        Command::CuboCubic,
        Command::Desmic,
        Command::Hexagram,
        Command::Species,
        Command::Group,
        Command::VerifyAll,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Configurations => "configurations",
            Command::CayleySalmon => "cayley-salmon",
            Command::Hexahedral => "hexahedral",
            Command::Determinantal => "determinantal",
            Command::CuboCubic => "cubo-cubic",
            Command::Desmic => "desmic",
            Command::Hexagram => "hexagram",
            Command::Species => "species",
            Command::Group => "group",
            Command::VerifyAll => "verify-all",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// A finished report. `ok` is false when a checked claim failed.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

struct Builder {
    text: String,
    json: Map<String, Value>,
}

impl Builder {
    fn new(cmd: Command) -> Self {
        let mut json = Map::new();
        json.insert("schema".into(), json!(SCHEMA));
        json.insert("command".into(), json!(cmd.name()));
        Builder { text: String::new(), json }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn put(&mut self, key: &str, v: Value) {
        self.json.insert(key.into(), v);
    }

    fn finish(self, ok: bool) -> Output {
        Output { text: self.text, json: Value::Object(self.json), ok }
    }
}

fn pt(p: &[Fe]) -> String {
    format!("({})", p.iter().map(Fe::to_string).collect::<Vec<_>>().join(" : "))
}

fn label(k: usize) -> String {
    LineLabel::from_index(k).to_string()
}

fn trio_labels(t: &Trio) -> String {
    six_labels(t)
}

fn six_labels(t: &[u8]) -> String {
    t.iter().map(|&k| label(k as usize)).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

struct Base {
    surface: CubicSurface,
    lines: LabeledLines,
    configs: Configurations,
}

impl Base {
    fn new(points: Option<SixPoints>) -> Result<Self> {
        let surface = CubicSurface::from_points(points.unwrap_or_else(SixPoints::fixture))?;
        let lines = labeled_lines(&surface)?;
        Ok(Base { surface, lines, configs: Configurations::compute() })
    }

    fn field(&self) -> FieldDescriptor {
        self.surface.field()
    }

    fn planes(&self) -> Result<Vec<ProjPlane>> {
        self.configs.tritangents.iter().map(|t| tritangent_plane(t, &self.lines)).collect()
    }

    fn context(self) -> Result<Context> {
        let planes = self.planes()?;
        Ok(Context { surface: self.surface, lines: self.lines, configs: self.configs, planes, group: AutomorphismGroup::compute() })
    }
}

pub fn run(cmd: Command, points: Option<SixPoints>, opts: &VerifyOptions) -> Result<Output> {
    match cmd {
        Command::Construct => construct(Base::new(points)?),
        Command::Configurations => configurations(Base::new(points)?, opts),
        Command::CayleySalmon => cayley_salmon_cmd(Base::new(points)?, opts),
        Command::Hexahedral => hexahedral(Base::new(points)?, opts),
        Command::Determinantal => determinantal(Base::new(points)?, opts),
        Command::CuboCubic => cubo_cubic_cmd(Base::new(points)?, opts),
        Command::Desmic => desmic(Base::new(points)?, opts),
        Command::Hexagram => hexagram(Base::new(points)?, opts),
        Command::Species => species(opts),
        Command::Group => group(),
        Command::VerifyAll => {
            let cx = Base::new(points)?.context()?;
            let r = verify_all(&cx, opts);
            Ok(Output { text: r.text(), json: r.json(), ok: r.all_pass() })
        }
    }
}

fn construct(b: Base) -> Result<Output> {
    let mut o = Builder::new(Command::Construct);
    let field = b.field();
    o.line(format!("field: {field}"));
    for (i, p) in b.surface.source.points.iter().enumerate() {
        o.line(format!("p{}: {}", i + 1, pt(p.coords())));
    }
    o.line(format!("F = {}", b.surface.f));
    o.line(format!("lines: {}", b.lines.lines.len()));
    for (k, l) in b.lines.lines.iter().enumerate() {
        let (p, q) = l.points();
        o.line(format!("{:>4}: {} {}", label(k), pt(p.coords()), pt(q.coords())));
    }
    o.put("field", field_to_json(&field));
    o.put("points", Value::Array(b.surface.source.points.iter().map(|p| point_to_json(p, &field)).collect()));
    o.put("surface", poly_to_json(&b.surface.f, &field));
    o.put("lines", lines_to_json(&b.lines, &field));
    Ok(o.finish(true))
}

fn configurations(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Configurations);
    let c = &b.configs;
    let fam = |f: DoubleSixFamily| c.double_sixes.iter().filter(|d| d.family() == f).count();
    let e = c.enneahedra();
    let kind = |k: EnneahedronKind| e.iter().filter(|x| x.kind == k).count();
    o.line(format!("tritangent trios: {}", c.tritangents.len()));
    o.line(format!(
        "double-sixes: {} (ab {}, pair {}, triple {})",
        c.double_sixes.len(),
        fam(DoubleSixFamily::AB),
        fam(DoubleSixFamily::Pair),
        fam(DoubleSixFamily::Triple)
    ));
    o.line(format!("trieder pairs: {}", c.trieder_pairs.len()));
    o.line(format!("triads: {}", c.triads.len()));
    o.line(format!("enneahedra: {} (first kind {}, second kind {})", e.len(), kind(EnneahedronKind::First), kind(EnneahedronKind::Second)));
    o.put(
        "counts",
        json!({
            "tritangents": c.tritangents.len(),
            "double_sixes": c.double_sixes.len(),
            "double_six_families": {"ab": fam(DoubleSixFamily::AB), "pair": fam(DoubleSixFamily::Pair), "triple": fam(DoubleSixFamily::Triple)},
            "trieder_pairs": c.trieder_pairs.len(),
            "triads": c.triads.len(),
            "enneahedra": {"first": kind(EnneahedronKind::First), "second": kind(EnneahedronKind::Second)},
        }),
    );
    if opts.full {
        fn tl(t: &[u8]) -> Vec<String> {
            t.iter().map(|&k| label(k as usize)).collect()
        }
        for (k, t) in c.tritangents.iter().enumerate() {
            o.line(format!("trio {k}: {}", trio_labels(t)));
        }
        for (k, d) in c.double_sixes.iter().enumerate() {
            o.line(format!("double-six {k}: {} | {}", six_labels(&d.first), six_labels(&d.second)));
        }
        for (k, p) in c.trieder_pairs.iter().enumerate() {
            o.line(format!("trieder pair {k}: {}", p.rows().iter().map(trio_labels).collect::<Vec<_>>().join(" / ")));
        }
        o.put(
            "listing",
            json!({
                "tritangents": c.tritangents.iter().map(|t| tl(t)).collect::<Vec<_>>(),
                "double_sixes": c.double_sixes.iter().map(|d| json!([tl(&d.first), tl(&d.second)])).collect::<Vec<_>>(),
                "trieder_pairs": c.trieder_pairs.iter().map(|p| p.rows().iter().map(|t| tl(t)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "triads": c.triads,
            }),
        );
    }
    Ok(o.finish(true))
}

fn cayley_salmon_cmd(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::CayleySalmon);
    let field = b.field();
    let mut forms = Vec::new();
    let mut ok = true;
    for k in cs_indices(opts) {
        let pair = &b.configs.trieder_pairs[k];
        let cs = cayley_salmon(pair, &b.surface, &b.lines)?;
        let exact = cs.cubic() == b.surface.f;
        ok &= exact;
        o.line(format!(
            "pair {k}: rows {} | lambda {} mu {} | identity {}",
            pair.rows().iter().map(trio_labels).collect::<Vec<_>>().join(" / "),
            cs.lambda,
            cs.mu,
            if exact { "exact" } else { "FAILS" }
        ));
        forms.push(json!({
            "pair": k,
            "rows": pair.rows().iter().map(trio_labels).collect::<Vec<_>>(),
            "columns": pair.columns().iter().map(trio_labels).collect::<Vec<_>>(),
            "planes": cs.planes.iter().map(|h| plane_to_json(h, &field)).collect::<Vec<_>>(),
            "lambda": fe_to_json(&cs.lambda, &field),
            "mu": fe_to_json(&cs.mu, &field),
            "identity": exact,
        }));
    }
    o.put("forms", Value::Array(forms));
    Ok(o.finish(ok))
}

fn hex_json(h: &HexahedralForm) -> Value {
    json!({
        "matrix": h.matrix().iter().map(|r| vec_to_json(r, &h.field)).collect::<Vec<_>>(),
        "a": vec_to_json(&h.a, &h.field),
        "c": fe_to_json(&h.c, &h.field),
        "field": field_to_json(&h.field),
        "sign": h.sign.as_str(),
    })
}

fn hexahedral(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Hexahedral);
    let mut ok = true;
    if opts.full {
        let e = enumerate_hexahedral(&b.surface, &b.lines, &b.configs, None, opts.split)?;
        let base: usize = e.base_counts.iter().sum();
        let split: usize = e.split_counts.iter().sum();
        o.line(format!("raw forms: {} from {} Cayley-Salmon forms", e.raw, e.cs_used));
        o.line(format!("distinct forms: {} (double-sixes covered: {})", e.forms.len(), e.forms.len()));
        o.line(format!("roots over the base field: {base}, roots needing an extension: {split}"));
        ok &= e.forms.len() == 36 && e.raw == 360;
        let mut listed = Vec::new();
        for (ds, f) in &e.forms {
            o.line(format!("double-six {ds}: from pair {}, c = {}, field {}", f.cs_index, f.form.c, f.form.field));
            let mut v = hex_json(&f.form);
            v["double_six"] = json!(ds);
            v["cs_index"] = json!(f.cs_index);
            listed.push(v);
        }
        o.put("summary", json!({"raw": e.raw, "distinct": e.forms.len(), "base_roots": base, "extension_roots": split}));
        o.put("forms", Value::Array(listed));
        return Ok(o.finish(ok));
    }
    let k = pick(120, 1, opts.seed)[0];
    let cs = cayley_salmon(&b.configs.trieder_pairs[k], &b.surface, &b.lines)?;
    let d = hexahedral_from_cs(&cs, opts.split)?;
    o.line(format!("pair {k}: {} forms, sign {}, base-field roots {}, extension roots {}", d.forms.len(), d.sign.as_str(), d.base_count, d.split_count));
    let mut listed = Vec::new();
    for (n, h) in d.forms.iter().enumerate() {
        let hl = hexahedral_lines(h, &b.surface, &b.lines, &b.configs)?;
        let cs10 = cs_from_hexahedral(h, &hl, &b.surface, &b.lines)?;
        let sum = h.x.iter().fold(MultiPoly::zero(4), |a, x| &a + x).is_zero();
        let cubes = h.sum_of_cubes() == b.surface.f.scale(&h.c);
        ok &= sum && cubes && cs10.len() == 10;
        o.line(format!("form {n}: field {}, c = {}", h.field, h.c));
        for (i, x) in h.x.iter().enumerate() {
            o.line(format!("    x{} = {x}", i + 1));
        }
        o.line(format!("    a = {}", pt(&h.a)));
        o.line(format!("    sum x_i = 0: {}, sum x_i^3 = cF: {}, Cayley-Salmon forms: {}", yes(sum), yes(cubes), cs10.len()));
        o.line(format!("    complement: double-six {}", hl.double_six_index));
        let ls: Vec<String> = hl
            .partitions
            .iter()
            .zip(&hl.labels)
            .map(|(p, &l)| format!("{{{}{},{}{},{}{}}}={}", p[0][0] + 1, p[0][1] + 1, p[1][0] + 1, p[1][1] + 1, p[2][0] + 1, p[2][1] + 1, label(l)))
            .collect();
        o.line(format!("    lines: {}", ls.join(" ")));
        let mut v = hex_json(h);
        v["double_six"] = json!(hl.double_six_index);
        v["lines"] = json!(ls);
        v["cayley_salmon_count"] = json!(cs10.len());
        listed.push(v);
    }
    o.put("pair", json!(k));
    o.put("forms", Value::Array(listed));
    Ok(o.finish(ok))
}

fn linear_matrix_json(m: &[[MultiPoly; 3]; 3], field: &FieldDescriptor) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|x| vec_to_json(&lin(x), field)).collect())).collect())
}

fn lin(x: &MultiPoly) -> Vec<Fe> {
    if x.is_zero() {
        vec![Fe::zero(); 4]
    } else {
        x.linear_coefficients()
    }
}

fn determinantal(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Determinantal);
    let field = b.field();
    let k = pick(120, 1, opts.seed)[0];
    let cs = cayley_salmon(&b.configs.trieder_pairs[k], &b.surface, &b.lines)?;
    let segre = det_rep(&cs);
    let rep = segre.mixed();
    let mut ok = true;
    for (name, r) in [("zero-diagonal", &segre), ("mixed", &rep)] {
        let exact = r.det() == b.surface.f.scale(&r.kappa);
        let nets = grassmann_nets(r);
        ok &= exact;
        o.line(format!("{name} matrix from pair {k}: kappa = {}, det M = kappa F: {}, net ranks {:?}", r.kappa, yes(exact), nets.net_ranks()));
        for i in 0..3 {
            o.line(format!("    [{}]", r.m[i].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
        }
    }
    let gamma = grassmann_param(&grassmann_nets(&rep))?;
    let vanishes = b.surface.f.compose(&gamma).is_zero();
    ok &= vanishes;
    o.line(format!("F o gamma = 0: {}", yes(vanishes)));
    for (i, g) in gamma.iter().enumerate() {
        o.line(format!("    gamma{i} = {g}"));
    }
    o.put("pair", json!(k));
    o.put("segre", json!({"matrix": linear_matrix_json(&segre.m, &field), "kappa": fe_to_json(&segre.kappa, &field)}));
    o.put("mixed", json!({"matrix": linear_matrix_json(&rep.m, &field), "kappa": fe_to_json(&rep.kappa, &field)}));
    o.put("gamma", Value::Array(gamma.iter().map(|g| poly_to_json(g, &field)).collect()));
    o.put("f_of_gamma_vanishes", json!(vanishes));
    Ok(o.finish(ok))
}

fn cubo_cubic_cmd(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::CuboCubic);
    let field = b.field();
    let k = pick(120, 1, opts.seed)[0];
    let rep = det_rep(&cayley_salmon(&b.configs.trieder_pairs[k], &b.surface, &b.lines)?).mixed();
    let map = cubo_cubic(&rep)?;
    let gamma = grassmann_param(&grassmann_nets(&rep))?;
    let cubic = map.components.iter().all(|c| c.total_degree() == Some(3));
    let g = components_gcd(&map);
    let restricts = restricts_to_param(&map, &gamma);
    let dim = plane_image_cubic_dim(&map, opts.seed);
    let fixed = count_fixed_surface_points(&map, &b.surface, 20, opts.seed);
    let triangle = triangle_sextics(&rep);
    o.line(format!("pair {k}, mixed determinantal matrix"));
    for (i, c) in map.components.iter().enumerate() {
        o.line(format!("T{i} = {c}"));
    }
    o.line(format!("components cubic: {}, common factor of components: {}", yes(cubic), g));
    o.line(format!("T on x3 = 0 equals gamma: {}", yes(restricts)));
    o.line(format!("cubics through 25 images of a plane: dimension {dim}"));
    o.line(format!("sampled surface points fixed: {fixed} of 20"));
    let tri = match &triangle {
        Ok((_, g)) => format!("common factor of degree {}", g.total_degree().unwrap_or(0)),
        Err(e) => format!("{}: {e}", e.name()),
    };
    o.line(format!("vertex construction: {tri}"));
    o.put("pair", json!(k));
    o.put(
        "n",
        Value::Array(map.n.iter().map(|r| Value::Array(r.iter().map(|x| vec_to_json(&lin(x), &field)).collect())).collect()),
    );
    o.put("components", Value::Array(map.components.iter().map(|c| poly_to_json(c, &field)).collect()));
    o.put("inverse", Value::Array(map.inverse.iter().map(|c| poly_to_json(c, &field)).collect()));
    o.put("common_factor", poly_to_json(&map.common_factor, &field));
    o.put(
        "checks",
        json!({
            "components_cubic": cubic,
            "components_gcd_constant": g.is_constant(),
            "restricts_to_gamma": restricts,
            "plane_image_cubic_dim": dim,
            "fixed_points_of_20": fixed,
            "vertex_construction": tri,
        }),
    );
    Ok(o.finish(cubic && restricts && dim == 1))
}

fn desmic(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Desmic);
    let field = b.field();
    let planes = b.planes()?;
    let census = six_line_quadric_census(&b.configs, &planes, &b.lines, &b.surface)?;
    let mut ok = census.distinct == 360;
    o.line(format!("distinct nonsingular six-line quadrics: {}, multiplicities {:?}", census.distinct, census.multiplicities));
    let mut per_plane = Vec::new();
    for t in desmic_planes(opts) {
        let set = &census.sets[t];
        let span = quadric_span(&sample_residual_quadrics(t, &b.configs, &planes, &b.surface, 24, opts.seed)?).len();
        let web = quadric_web(t, &b.configs, &planes, &b.surface, opts.seed).err().map(|e| e.to_string());
        let nodes = line_pair_nodes(t, &b.configs, &b.lines)?;
        let part = desmic_partition(&nodes)?;
        let pencil = quartics_singular_at(&nodes).len();
        ok &= set.nonsingular.len() == 48 && part.rank == 2;
        o.line(format!("plane {t} ({}):", trio_labels(&b.configs.tritangents[t])));
        o.line(format!("    residual quadric span: {span}{}", web.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()));
        o.line(format!("    nonsingular quadrics: {}, ranks {:?}", set.nonsingular.len(), set.ranks));
        o.line(format!("    desmic tetrads {:?}, dependency rank {}", part.tetrads, part.rank));
        o.line(format!("    quartics singular at the 12 nodes: dimension {pencil}"));
        for (i, n) in nodes.iter().enumerate() {
            o.line(format!("    node {i}: {}", pt(n.coords())));
        }
        per_plane.push(json!({
            "plane": t,
            "trio": trio_labels(&b.configs.tritangents[t]),
            "residual_span_dimension": span,
            "web_error": web,
            "nonsingular": set.nonsingular.len(),
            "ranks": set.ranks,
            "nodes": nodes.iter().map(|p| point_to_json(p, &field)).collect::<Vec<_>>(),
            "tetrads": part.tetrads,
            "relation": vec_to_json(&part.relation, &field),
            "dependency_rank": part.rank,
            "nodal_quartic_dimension": pencil,
        }));
    }
    let g = intersection_point_grouping(&b.configs, &b.lines)?;
    let mult_ok = g.multiplicity.iter().all(|&m| m == 4);
    ok &= g.points.len() == 135 && g.groups.len() == 45 && mult_ok;
    o.line(format!("intersection points: {}, groups: {} of 12, every point in 4 groups: {}", g.points.len(), g.groups.len(), yes(mult_ok)));
    o.put("census", json!({"distinct": census.distinct, "multiplicities": census.multiplicities}));
    o.put("planes", Value::Array(per_plane));
    o.put("grouping", json!({"points": g.points.len(), "groups": g.groups, "multiplicity_four": mult_ok}));
    Ok(o.finish(ok))
}

fn hexagram(b: Base, opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Hexagram);
    let field = b.field();
    let planes = b.planes()?;
    let cx = Context { surface: b.surface, lines: b.lines, configs: b.configs, planes, group: AutomorphismGroup { generators: vec![], elements: vec![] } };
    let hex = rational_hexahedral(&cx, opts.seed)?;
    let hl = hexahedral_lines(&hex, &cx.surface, &cx.lines, &cx.configs)?;
    let cfg = hexagram_config(&hex, &hl, &cx.surface)?;
    let pents = pentahedra(&cfg)?;
    let recs = verify_all_hexagrams(&cfg, &cx.surface, 3, opts.seed)?;
    let good = recs.iter().filter(|r| r.collinearity_rank == 2 && r.on_projected_pascal).count();
    o.line(format!("Cremona pairs: {}, disjoint pairs meeting on X: {}", cfg.cremona.len(), cfg.disjoint_on_surface));
    o.line(format!("pentahedra: {}", pents.len()));
    o.line(format!("projections with collinear diagonals on the Pascal line: {good} of {}", recs.len()));
    let name = |h: usize| format!("P{}{}", cfg.pairs[h][0] + 1, cfg.pairs[h][1] + 1);
    for (k, c) in cfg.cremona.iter().enumerate() {
        let mine: Vec<_> = recs.iter().filter(|r| r.pair == k).collect();
        o.line(format!(
            "pair {k}: {} {}, ranks {:?}",
            name(c.planes[0]),
            name(c.planes[1]),
            mine.iter().map(|r| r.collinearity_rank).collect::<Vec<_>>()
        ));
    }
    o.put("hexahedral", hex_json(&hex));
    o.put(
        "pairs",
        Value::Array(
            cfg.cremona
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    json!({
                        "planes": [name(c.planes[0]), name(c.planes[1])],
                        "pascal": line_to_json(&c.pascal, &field),
                        "projections": recs.iter().filter(|r| r.pair == k).map(|r| json!({
                            "center": point_to_json(&r.center, &field),
                            "lines": r.order.iter().map(|&i| label(cfg.labels[i])).collect::<Vec<_>>(),
                            "vertices": r.vertices.iter().map(|v| point_to_json(v, &field)).collect::<Vec<_>>(),
                            "diagonal_points": r.diagonal_points.iter().map(|v| point_to_json(v, &field)).collect::<Vec<_>>(),
                            "collinearity_rank": r.collinearity_rank,
                            "on_projected_pascal": r.on_projected_pascal,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        ),
    );
    o.put("pentahedra", Value::Array(pents.iter().map(|p| json!(p.faces.iter().map(|&h| name(h)).collect::<Vec<_>>())).collect()));
    Ok(o.finish(good == recs.len() && cfg.cremona.len() == 60))
}

fn species(_opts: &VerifyOptions) -> Result<Output> {
    let mut o = Builder::new(Command::Species);
    let configs = Configurations::compute();
    let group = AutomorphismGroup::compute();
    let mut reports = Vec::new();
    for k in 1..=4 {
        let r = species_pipeline(k, &configs, &group)?;
        o.line(format!(
            "fixture {k}: species {}, {} real lines, {} real tritangents, double-sixes {:?}",
            r.species, r.profile.real_lines, r.profile.real_tritangents, r.profile.double_sixes
        ));
        reports.push(serde_json::to_value(&r).expect("serializable"));
    }
    let census = involution_census(&group, &configs);
    let mut table = Vec::new();
    for (p, n) in &census.profiles {
        let s = census.species[p];
        o.line(format!(
            "involutions {n}: {} lines, {} tritangents, real double-sixes {}{}",
            p.real_lines,
            p.real_tritangents,
            p.double_sixes.real_double_sixes(),
            s.map(|k| format!(", species {k}")).unwrap_or_default()
        ));
        table.push(json!({"count": n, "profile": p, "species": s}));
    }
    o.put("fixtures", Value::Array(reports));
    o.put("census", Value::Array(table));
    Ok(o.finish((1..=5).all(|k| census.has_species(k))))
}

fn group() -> Result<Output> {
    let mut o = Builder::new(Command::Group);
    let configs = Configurations::compute();
    let g = AutomorphismGroup::compute();
    let orbits = orbit_sizes(&g, &configs);
    let invs = g.elements.iter().filter(|p| p.is_involution()).count();
    o.line(format!("generators: {}", g.generators.len()));
    o.line(format!("order: {}", g.order()));
    o.line(format!("orbits: lines {}, double-sixes {}, tritangents {}, triads {}", orbits[0], orbits[1], orbits[2], orbits[3]));
    o.line(format!("involutions: {invs}"));
    o.put("order", json!(g.order()));
    o.put("orbits", json!({"lines": orbits[0], "double_sixes": orbits[1], "tritangents": orbits[2], "triads": orbits[3]}));
    o.put("involutions", json!(invs));
    o.put(
        "generators",
        Value::Array(g.generators.iter().map(|p| json!(p.0.iter().map(|&k| label(k as usize)).collect::<Vec<_>>())).collect()),
    );
    Ok(o.finish(g.order() == 51840 && orbits == [27, 36, 45, 40]))
}
