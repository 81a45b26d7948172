use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use dessins_core::belyi::{self, BelyiCandidate, BelyiError, CandidateJson, RootValue};
use dessins_core::contextuality::{
    census_pentagrams, census_squares, chsh_norm, is_magic, ChshQuadruple, ContextError, MagicConfiguration,
    MagicConfigurationJson,
};
use dessins_core::dessin::{Dessin, DessinError, DessinJson};
use dessins_core::fpgroup::{
    coset_enumerate, dessin_from_table, enumerate_dessins_direct, low_index_subgroups_capped, DessinFilter,
    FinitePresentation, FpError,
};
use dessins_core::geometry::{
    canonical_form, catalog, catalog_names, graph_facts, hyperplane_closure, hyperplanes, induce_geometry,
    isomorphic, maximal_cliques, pair_stabilizer_classes, verify_generalized_polygon, CatalogItem, GeometryError,
    Graph, GraphJson, HyperplaneKind, IncidenceGeometry, IncidenceGeometryJson,
};
use dessins_core::pauli::{self, PauliError};
use dessins_core::perm::{CycleType, PermError};

use crate::report::{CliError, Outcome, Session};
use crate::{BelyiCmd, CatalogCmd, ChshCmd, Command, DessinCmd, FpCmd, GeometryCmd, MagicCmd, PauliCmd};

const CATALOG_PREFIX: &str = "catalog:";

impl From<PauliError> for CliError {
    fn from(e: PauliError) -> Self {
        match e {
            PauliError::DenseTooLarge(_) => CliError::cap(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::GroupTooLarge(_) => CliError::cap(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<DessinError> for CliError {
    fn from(e: DessinError) -> Self {
        match e {
            DessinError::Perm(p) => p.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<ContextError> for CliError {
    fn from(e: ContextError) -> Self {
        match e {
            ContextError::Pauli(p) => p.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<FpError> for CliError {
    fn from(e: FpError) -> Self {
        match e {
            FpError::CosetCap(_) | FpError::IndexCap { .. } | FpError::DirectCap { .. } => CliError::cap(e.to_string()),
            FpError::Dessin(d) => d.into(),
            FpError::Perm(p) => p.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::TooManyVertices { .. } => CliError::cap(e.to_string()),
            GeometryError::Unsupported { ref requirement, .. } if requirement.starts_with("at most") => {
                CliError::cap(e.to_string())
            }
            GeometryError::Dessin(d) => d.into(),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<BelyiError> for CliError {
    fn from(e: BelyiError) -> Self {
        match e {
            BelyiError::DegreeTooLarge { .. } => CliError::cap(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid {what} JSON: {e}")))
}

pub fn run(cmd: &Command, s: &mut Session) -> Result<Outcome, CliError> {
    match cmd {
        Command::Pauli(c) => run_pauli(c),
        Command::Magic(c) => run_magic(c, s),
        Command::Chsh(ChshCmd::Norm { s1, s2, s3, s4 }) => run_chsh(&[s1, s2, s3, s4]),
        Command::Dessin(c) => run_dessin(c, s),
        Command::Fp(c) => run_fp(c, s),
        Command::Geometry(c) => run_geometry(c, s),
        Command::Belyi(c) => run_belyi(c, s),
        Command::Catalog(c) => run_catalog(c, s),
    }
}

fn run_pauli(c: &PauliCmd) -> Result<Outcome, CliError> {
    match c {
        PauliCmd::Mul { a, b } => {
            let p = pauli::parse(a)?.multiply(&pauli::parse(b)?)?;
            Ok(Outcome::new(p.to_string(), json!({ "product": p.to_string() })))
        }
        PauliCmd::Commutes { a, b } => {
            let r = pauli::parse(a)?.commutes(&pauli::parse(b)?)?;
            Ok(Outcome::new(r.to_string(), json!({ "commutes": r })))
        }
    }
}

fn load_magic(source: &str, s: &mut Session) -> Result<MagicConfiguration, CliError> {
    if let Some(name) = source.strip_prefix(CATALOG_PREFIX) {
        return match catalog(name)? {
            CatalogItem::Magic(m) => Ok(m),
            other => Err(CliError::input(format!("catalog entry {name} is a {}", other.kind()))),
        };
    }
    let j: MagicConfigurationJson = parse_json(&s.read(source)?, "configuration")?;
    Ok(MagicConfiguration::from_json(&j)?)
}

fn run_magic(c: &MagicCmd, s: &mut Session) -> Result<Outcome, CliError> {
    match c {
        MagicCmd::Verify { config } => {
            let m = load_magic(config, s)?;
            let cert = is_magic(&m);
            let mut text = String::new();
            for (line, sign) in m.lines().iter().zip(&cert.line_signs) {
                let names: Vec<String> = line.iter().map(|&i| m.observables()[i].to_string()).collect();
                writeln!(text, "{} -> {}", names.join(" "), if *sign > 0 { "+" } else { "-" }).unwrap();
            }
            writeln!(text, "every observable on an even number of lines: {}", cert.all_even).unwrap();
            writeln!(text, "product of line signs: {}", cert.sign_product).unwrap();
            writeln!(text, "magic: {}", cert.magic).unwrap();
            Ok(Outcome::new(text, to_value(&cert)).holds(cert.magic))
        }
        MagicCmd::Census(a) if a.pentagrams => {
            let census = census_pentagrams(s.threads)?;
            let mut results = json!({
                "kind": "pentagrams",
                "count": census.magic.count,
                "pentagram_shaped": census.shaped,
                "candidate_lines": census.line_count,
            });
            let mut text = census.magic.count.to_string();
            if !a.count_only {
                let members: Vec<Value> = census.magic.members.iter().map(|m| to_value(&m.to_json())).collect();
                text = census
                    .magic
                    .members
                    .iter()
                    .map(|m| {
                        m.lines()
                            .iter()
                            .map(|l| l.iter().map(|&i| m.observables()[i].to_string()).collect::<Vec<_>>().join(" "))
                            .collect::<Vec<_>>()
                            .join(" | ")
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                writeln!(text, "\ncount: {}", census.magic.count).unwrap();
                results["members"] = Value::Array(members);
            }
            Ok(Outcome::new(text, results))
        }
        MagicCmd::Census(a) => {
            let census = census_squares(a.qubits as usize, s.threads)?;
            let mut results = json!({ "kind": "squares", "qubits": a.qubits, "count": census.count });
            let mut text = census.count.to_string();
            if !a.count_only {
                let rows: Vec<Vec<String>> = census.members.iter().map(square_names).collect();
                text = rows.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("\n");
                writeln!(text, "\ncount: {}", census.count).unwrap();
                results["members"] = to_value(&rows);
            }
            Ok(Outcome::new(text, results))
        }
    }
}

fn square_names(q: &ChshQuadruple) -> Vec<String> {
    q.sigma().iter().map(ToString::to_string).collect()
}

fn run_chsh(args: &[&String; 4]) -> Result<Outcome, CliError> {
    let ops = args.map(|a| pauli::parse(a));
    let mut sigma = [pauli::PauliOperator::identity(1); 4];
    for (k, op) in ops.into_iter().enumerate() {
        sigma[k] = op?;
    }
    let q = ChshQuadruple::new(sigma)?;
    let norm = chsh_norm(&q)?;
    Ok(Outcome::new(format!("{norm:.12}"), json!({ "sigma": square_names(&q), "norm": norm })))
}

fn load_dessin(path: &str, s: &mut Session) -> Result<Dessin, CliError> {
    let j: DessinJson = parse_json(&s.read(path)?, "dessin")?;
    Ok(Dessin::try_from(&j)?)
}

fn parse_cycle_type(text: &Option<String>) -> Result<Option<CycleType>, CliError> {
    text.as_deref()
        .map(|t| CycleType::parse(t).ok_or_else(|| CliError::input(format!("invalid cycle type {t:?}"))))
        .transpose()
}

fn dessin_summary(d: &Dessin, group_cap: usize) -> Result<Value, CliError> {
    let group = d.monodromy_group(group_cap)?;
    Ok(json!({
        "dessin": to_value(&d.to_json()),
        "passport": d.passport().to_string(),
        "signature": to_value(&d.signature()?),
        "genus": d.genus()?,
        "clean": d.is_clean(),
        "monodromy_group": to_value(&group),
    }))
}

fn run_dessin(c: &DessinCmd, s: &mut Session) -> Result<Outcome, CliError> {
    match c {
        DessinCmd::Analyze { dessin, group_cap } => {
            let d = load_dessin(dessin, s)?;
            let v = dessin_summary(&d, *group_cap)?;
            let sig = d.signature()?;
            let g = &v["monodromy_group"];
            let mut text = String::new();
            writeln!(text, "edges: {}", d.n_edges()).unwrap();
            writeln!(text, "passport: {}", d.passport()).unwrap();
            writeln!(text, "signature (B, W, F, g): ({}, {}, {}, {})", sig.black, sig.white, sig.faces, sig.genus).unwrap();
            writeln!(text, "genus: {}", sig.genus).unwrap();
            writeln!(text, "clean: {}", d.is_clean()).unwrap();
            writeln!(text, "monodromy group order: {}", g["order"]).unwrap();
            writeln!(text, "abelian: {}", g["abelian"]).unwrap();
            if let Some(name) = g["name"].as_str() {
                writeln!(text, "group: {name}").unwrap();
            }
            Ok(Outcome::new(text, v).with_dot(d.to_dot()))
        }
        DessinCmd::Enumerate { edges, black, white, faces, order, count_only } => {
            let filter = DessinFilter {
                black: parse_cycle_type(black)?,
                white: parse_cycle_type(white)?,
                faces: parse_cycle_type(faces)?,
                group_order: *order,
            };
            let found = enumerate_dessins_direct(*edges, &filter, s.threads)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            if !count_only {
                for d in &found {
                    let v = dessin_summary(d, dessins_core::dessin::DEFAULT_GROUP_CAP)?;
                    let j = d.to_json();
                    writeln!(
                        text,
                        "{}  genus {}  |G| = {}  alpha {:?} beta {:?}",
                        v["passport"].as_str().unwrap_or_default(),
                        v["genus"],
                        v["monodromy_group"]["order"],
                        j.alpha,
                        j.beta
                    )
                    .unwrap();
                    rows.push(v);
                }
            }
            writeln!(text, "count: {}", found.len()).unwrap();
            let mut results = json!({ "edges": edges, "count": found.len() });
            if !count_only {
                results["dessins"] = Value::Array(rows);
            }
            Ok(Outcome::new(text, results))
        }
    }
}

fn load_presentation(path: &str, s: &mut Session) -> Result<FinitePresentation, CliError> {
    Ok(FinitePresentation::parse(&s.read(path)?)?)
}

fn run_fp(c: &FpCmd, s: &mut Session) -> Result<Outcome, CliError> {
    match c {
        FpCmd::Coset { presentation, max_cosets } => {
            let p = load_presentation(presentation, s)?;
            let t = coset_enumerate(&p, p.subgroup(), *max_cosets)?;
            let mut text = format!("index: {}\n", t.index());
            for (i, row) in t.rows().iter().enumerate().take(64) {
                let cells: Vec<String> = row.iter().map(|c| (c + 1).to_string()).collect();
                writeln!(text, "{:>4}: {}", i + 1, cells.join(" ")).unwrap();
            }
            if t.index() > 64 {
                writeln!(text, "... ({} rows)", t.index()).unwrap();
            }
            Ok(Outcome::new(text, json!({ "index": t.index(), "table": to_value(&t.to_json(&p)) })))
        }
        FpCmd::LowIndex { presentation, max_index, index_cap, count_only } => {
            let p = load_presentation(presentation, s)?;
            let tables = low_index_subgroups_capped(&p, *max_index, *index_cap, s.threads)?;
            let mut by_index: BTreeMap<usize, usize> = BTreeMap::new();
            let mut text = String::new();
            let mut rows = Vec::new();
            for t in &tables {
                *by_index.entry(t.index()).or_default() += 1;
                if *count_only {
                    continue;
                }
                let mut row = json!({ "index": t.index(), "table": to_value(&t.to_json(&p)) });
                let mut line = format!("index {}", t.index());
                if p.generators().len() >= 2 {
                    let d = dessin_from_table(t)?;
                    let order = d.monodromy_group(dessins_core::dessin::DEFAULT_GROUP_CAP)?.order;
                    write!(line, "  passport {}  genus {}  |G| = {order}", d.passport(), d.genus()?).unwrap();
                    row["passport"] = json!(d.passport().to_string());
                    row["genus"] = json!(d.genus()?);
                    row["group_order"] = json!(order);
                    row["dessin"] = to_value(&d.to_json());
                }
                writeln!(text, "{line}").unwrap();
                rows.push(row);
            }
            writeln!(text, "count: {}", tables.len()).unwrap();
            let mut results = json!({ "count": tables.len(), "by_index": to_value(&by_index) });
            if !count_only {
                results["subgroups"] = Value::Array(rows);
            }
            Ok(Outcome::new(text, results))
        }
    }
}

/// A graph file, a geometry file (its collinearity graph) or `catalog:NAME`.
fn load_graph(source: &str, s: &mut Session) -> Result<(Graph, Option<Vec<String>>), CliError> {
    if let Some(name) = source.strip_prefix(CATALOG_PREFIX) {
        let item = catalog(name)?;
        let labels = match &item {
            CatalogItem::Geometry(g) => Some(g.points().to_vec()),
            CatalogItem::Magic(m) => Some(m.observables().iter().map(ToString::to_string).collect()),
            CatalogItem::Graph(_) => None,
        };
        return Ok((item.graph(), labels));
    }
    let value: Value = parse_json(&s.read(source)?, "graph")?;
    if value.get("lines").is_some() {
        let j: IncidenceGeometryJson = serde_json::from_value(value).map_err(|e| CliError::input(e.to_string()))?;
        let g = IncidenceGeometry::from_json(&j)?;
        return Ok((g.collinearity_graph(), Some(g.points().to_vec())));
    }
    let j: GraphJson = serde_json::from_value(value).map_err(|e| CliError::input(format!("invalid graph JSON: {e}")))?;
    Ok((Graph::from_json(&j)?, None))
}

fn load_geometry(source: &str, s: &mut Session) -> Result<IncidenceGeometry, CliError> {
    if let Some(name) = source.strip_prefix(CATALOG_PREFIX) {
        return match catalog(name)? {
            CatalogItem::Geometry(g) => Ok(g),
            CatalogItem::Magic(m) => {
                let labels = m.observables().iter().map(ToString::to_string).collect();
                Ok(IncidenceGeometry::new(labels, m.lines().to_vec())?)
            }
            CatalogItem::Graph(_) => Err(CliError::input(format!("catalog entry {name} is a graph, not a geometry"))),
        };
    }
    let j: IncidenceGeometryJson = parse_json(&s.read(source)?, "geometry")?;
    Ok(IncidenceGeometry::from_json(&j)?)
}

/// Catalog entries with `n` vertices, including parametrized families.
fn catalog_candidates(n: usize) -> Vec<(String, Graph)> {
    let mut names: Vec<String> = catalog_names().iter().filter(|s| !s.contains('(')).map(|s| s.to_string()).collect();
    names.push(format!("k({n})"));
    for m in 2..=24usize {
        if m * (m - 1) / 2 == n {
            names.push(format!("triangular({m})"));
        }
        let mut binom = 1usize;
        for k in 1..=(m - 1) / 2 {
            binom = binom * (m - k + 1) / k;
            if binom == n {
                names.push(format!("kneser({m},{k})"));
            }
        }
    }
    names
        .into_iter()
        .filter_map(|name| {
            let g = catalog(&name).ok()?.graph();
            (g.n() == n).then_some((name, g))
        })
        .collect()
}

fn identify(g: &Graph) -> (Vec<String>, Vec<String>) {
    let complement = g.complement();
    let mut direct = Vec::new();
    let mut comp = Vec::new();
    for (name, h) in catalog_candidates(g.n()) {
        if h.edge_count() == g.edge_count() && isomorphic(g, &h) {
            direct.push(name.clone());
        }
        if h.edge_count() == complement.edge_count() && isomorphic(&complement, &h) {
            comp.push(name);
        }
    }
    (direct, comp)
}

fn geometry_text(geom: &IncidenceGeometry) -> String {
    let degrees = geom.point_degrees();
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for l in geom.lines() {
        *sizes.entry(l.len()).or_default() += 1;
    }
    let mut deg_hist: BTreeMap<usize, usize> = BTreeMap::new();
    for d in degrees {
        *deg_hist.entry(d).or_default() += 1;
    }
    format!("{} points, {} lines, line sizes {:?}, point degrees {:?}", geom.n_points(), geom.n_lines(), sizes, deg_hist)
}

fn run_geometry(c: &GeometryCmd, s: &mut Session) -> Result<Outcome, CliError> {
    match c {
        GeometryCmd::Induce { dessin, class, group_cap } => {
            let d = load_dessin(dessin, s)?;
            let classes = pair_stabilizer_classes(&d, *group_cap)?;
            let selected: Vec<usize> = match class {
                Some(k) if *k >= classes.len() => {
                    return Err(CliError::input(format!("class {k} out of range (there are {})", classes.len())))
                }
                Some(k) => vec![*k],
                None => (0..classes.len()).collect(),
            };
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut dot = None;
            for &k in &selected {
                let cl = &classes[k];
                let induced = induce_geometry(&d, cl)?;
                let (direct, comp) = identify(&induced.graph);
                writeln!(
                    text,
                    "class {k}: stabilizer order {} ({}), {} pairs",
                    cl.order(),
                    cl.name.as_deref().unwrap_or("unnamed"),
                    cl.pairs.len()
                )
                .unwrap();
                writeln!(text, "  graph: {} vertices, {} edges", induced.graph.n(), induced.graph.edge_count()).unwrap();
                writeln!(text, "  geometry: {}", geometry_text(&induced.geometry)).unwrap();
                if !direct.is_empty() {
                    writeln!(text, "  graph is isomorphic to: {}", direct.join(", ")).unwrap();
                }
                if !comp.is_empty() {
                    writeln!(text, "  complement is isomorphic to: {}", comp.join(", ")).unwrap();
                }
                if dot.is_none() {
                    dot = Some(induced.graph.to_dot(Some(induced.geometry.points())));
                }
                rows.push(json!({
                    "class": k,
                    "stabilizer": to_value(cl),
                    "graph": to_value(&induced.graph.to_json()),
                    "geometry": to_value(&induced.geometry.to_json()),
                    "isomorphic_to": direct,
                    "complement_isomorphic_to": comp,
                }));
            }
            let mut out = Outcome::new(text, json!({ "class_count": classes.len(), "classes": rows }));
            if let Some(dot) = dot {
                out = out.with_dot(dot);
            }
            Ok(out)
        }
        GeometryCmd::Identify { graph } => {
            let (g, labels) = load_graph(graph, s)?;
            let cf = canonical_form(&g);
            let (direct, comp) = identify(&g);
            let mut text = String::new();
            writeln!(text, "{} vertices, {} edges", g.n(), g.edge_count()).unwrap();
            writeln!(text, "automorphism group order: {}", cf.automorphism_group_order).unwrap();
            writeln!(text, "certificate: {}", certificate_digest(&cf.certificate)).unwrap();
            writeln!(text, "isomorphic to: {}", if direct.is_empty() { "-".into() } else { direct.join(", ") }).unwrap();
            writeln!(text, "complement isomorphic to: {}", if comp.is_empty() { "-".into() } else { comp.join(", ") })
                .unwrap();
            let results = json!({
                "vertices": g.n(),
                "edges": g.edge_count(),
                "canonical": to_value(&cf),
                "certificate_digest": certificate_digest(&cf.certificate),
                "isomorphic_to": direct,
                "complement_isomorphic_to": comp,
            });
            Ok(Outcome::new(text, results).with_dot(g.to_dot(labels.as_deref())))
        }
        GeometryCmd::Polygon { geometry, n } => {
            let geom = load_geometry(geometry, s)?;
            let r = verify_generalized_polygon(&geom, *n)?;
            let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
            let text = format!(
                "{}\n(s, t) = ({}, {})\nLevi diameter: {}\nLevi girth: {}\ngeneralized {}-gon: {}\n",
                geometry_text(&geom),
                show(r.s),
                show(r.t),
                r.diameter,
                show(r.girth),
                n,
                r.pass
            );
            let mut results = to_value(&r);
            results["points"] = json!(geom.n_points());
            results["lines"] = json!(geom.n_lines());
            let pass = r.pass;
            Ok(Outcome::new(text, results).holds(pass))
        }
        GeometryCmd::Hyperplanes { geometry } => {
            let geom = load_geometry(geometry, s)?;
            let hs = hyperplanes(&geom)?;
            let sets: Vec<Vec<usize>> = hs.iter().map(|h| h.points.clone()).collect();
            let closure = hyperplane_closure(&geom, &sets)?;
            let closed = closure.len() == sets.len();
            let mut counts: BTreeMap<HyperplaneKind, usize> = BTreeMap::new();
            let mut text = String::new();
            for h in &hs {
                *counts.entry(h.kind).or_default() += 1;
                let names: Vec<&str> = h.points.iter().map(|&p| geom.points()[p].as_str()).collect();
                writeln!(text, "{:<5} {:>2} points, {:>2} lines: {}", kind_name(h.kind), h.size(), h.internal_lines.len(), names.join(" "))
                    .unwrap();
            }
            writeln!(text, "count: {}", hs.len()).unwrap();
            for (k, n) in &counts {
                writeln!(text, "{}: {n}", kind_name(*k)).unwrap();
            }
            writeln!(text, "closed under addition: {closed}").unwrap();
            let by_kind: BTreeMap<&str, usize> = counts.iter().map(|(k, n)| (kind_name(*k), *n)).collect();
            let results = json!({
                "count": hs.len(),
                "by_kind": by_kind,
                "closed_under_addition": closed,
                "hyperplanes": to_value(&hs),
            });
            Ok(Outcome::new(text, results))
        }
        GeometryCmd::Cliques { graph } => {
            let (g, labels) = load_graph(graph, s)?;
            let cliques = maximal_cliques(&g);
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            let mut text = String::new();
            for c in &cliques {
                *sizes.entry(c.len()).or_default() += 1;
                let names: Vec<String> = match &labels {
                    Some(l) => c.iter().map(|&v| l[v].clone()).collect(),
                    None => c.iter().map(ToString::to_string).collect(),
                };
                writeln!(text, "{}", names.join(" ")).unwrap();
            }
            writeln!(text, "count: {}", cliques.len()).unwrap();
            for (k, n) in &sizes {
                writeln!(text, "size {k}: {n}").unwrap();
            }
            let results = json!({ "count": cliques.len(), "by_size": to_value(&sizes), "cliques": cliques });
            Ok(Outcome::new(text, results).with_dot(g.to_dot(labels.as_deref())))
        }
        GeometryCmd::Facts { graph } => {
            let (g, labels) = load_graph(graph, s)?;
            let f = graph_facts(&g)?;
            let text = format!(
                "vertices: {}\nedges: {}\nindependence number: {}\nedge chromatic number: {}\nbipartite: {}\nplanar: {}\n",
                f.vertices,
                f.edges,
                f.independence_number,
                f.edge_chromatic_number.map_or("-".into(), |x| x.to_string()),
                f.bipartite,
                f.planar
            );
            Ok(Outcome::new(text, to_value(&f)).with_dot(g.to_dot(labels.as_deref())))
        }
    }
}

fn kind_name(k: HyperplaneKind) -> &'static str {
    match k {
        HyperplaneKind::Perp => "perp",
        HyperplaneKind::Grid => "grid",
        HyperplaneKind::Ovoid => "ovoid",
        HyperplaneKind::Other => "other",
    }
}

/// SHA-256 of the canonical edge list, for quick comparison.
fn certificate_digest(cert: &[(usize, usize)]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    for (a, b) in cert {
        h.update((*a as u64).to_le_bytes());
        h.update((*b as u64).to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn root_text(r: &belyi::Root) -> String {
    let v = match &r.value {
        RootValue::Exact { value, .. } => value.clone(),
        RootValue::Approximate { re, im } => format!("{re:.9}{im:+.9}i"),
        RootValue::Infinity => "∞".into(),
    };
    if r.multiplicity == 1 {
        v
    } else {
        format!("{v} (x{})", r.multiplicity)
    }
}

fn run_belyi(c: &BelyiCmd, s: &mut Session) -> Result<Outcome, CliError> {
    let BelyiCmd::Verify { candidate, dessin } = c;
    let j: CandidateJson = parse_json(&s.read(candidate)?, "candidate")?;
    let f = BelyiCandidate::from_json(&j)?;
    let d = dessin.as_deref().map(|p| load_dessin(p, s)).transpose()?;
    let check = belyi::critical_values_ok(&f)?;
    let mut text = format!("f = {f}\ndegree: {}\ncritical values in {{0, 1, ∞}}: {}\n", f.degree(), check.ok);
    let mut results = json!({ "candidate": f.to_string(), "degree": f.degree(), "critical_values": to_value(&check) });
    let mut ok = check.ok;
    if let Some(w) = &check.witness {
        writeln!(text, "witness: {}", serde_json::to_string(w).expect("serializes")).unwrap();
    }
    if check.ok {
        let passport = belyi::passport_of(&f)?;
        writeln!(text, "passport: {passport}").unwrap();
        results["passport"] = json!(passport.to_string());
        match belyi::vertex_coordinates(&f) {
            Ok(coords) => {
                for (name, roots) in [("black", &coords.black), ("white", &coords.white), ("faces", &coords.faces)] {
                    let parts: Vec<String> = roots.iter().map(root_text).collect();
                    writeln!(text, "{name}: {}", parts.join(", ")).unwrap();
                }
                results["coordinates"] = to_value(&coords);
            }
            Err(BelyiError::DegreeTooLarge { .. }) => {}
            Err(e) => return Err(e.into()),
        }
        if let Some(d) = &d {
            let matches = passport == d.passport();
            writeln!(text, "dessin passport: {}\nmatches dessin: {matches}", d.passport()).unwrap();
            results["dessin_passport"] = json!(d.passport().to_string());
            results["matches_dessin"] = json!(matches);
            ok &= matches;
        }
    }
    results["verified"] = json!(ok);
    Ok(Outcome::new(text, results).holds(ok))
}

fn run_catalog(c: &CatalogCmd, _s: &mut Session) -> Result<Outcome, CliError> {
    match c {
        CatalogCmd::List => {
            let names = catalog_names();
            Ok(Outcome::new(names.join("\n"), json!({ "names": names })))
        }
        CatalogCmd::Get { name } => {
            let item = catalog(name)?;
            let body = item.to_json();
            let dot = match &item {
                CatalogItem::Graph(g) => g.to_dot(None),
                CatalogItem::Geometry(g) => g.to_dot(),
                CatalogItem::Magic(_) => item.graph().to_dot(None),
            };
            let text = serde_json::to_string_pretty(&body).expect("serializes");
            Ok(Outcome::new(text, json!({ "name": name, "kind": item.kind(), "value": body })).with_dot(dot))
        }
    }
}
