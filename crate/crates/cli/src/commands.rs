//! One function per subcommand.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use contact_lie::catalog::{self, EntryKind};
use contact_lie::extension::{analyze_kcontact, central_quotient, MainTheoremReport};
use contact_lie::io::{self, AlgebraFile, Loaded};
use contact_lie::metric::{construct_associated_metric, kcontact_obstruction, Obstruction};
use contact_lie::normal_form::{max_abs_diff, skew_normal_form};
use contact_lie::spectral::{minimal_polynomial, root_decomposition, verify_reeb_theorem, RootValues, Roots};
use contact_lie::{forms, ContactStructure, Error, FieldKind, Result};
use serde_json::{json, Value};

use crate::report::{self, Report};

/// Reads `source` as a file path, falling back to a catalog name.
fn load(source: &str) -> Result<Loaded> {
    let path = Path::new(source);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {source}: {e}")))?;
        return io::load_str(&text);
    }
    match catalog::entry(source) {
        Some(e) => e.to_file().load(),
        None => Err(Error::input(format!("{source}: no such file or catalog entry"))),
    }
}

fn contact(source: &str, form: &str) -> Result<ContactStructure> {
    let l = load(source)?;
    let eta = l.form(form)?.clone();
    ContactStructure::new(l.algebra, eta)
}

fn write_file(path: &Path, file: &AlgebraFile) -> Result<()> {
    fs::write(path, file.to_json() + "\n").map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))
}

fn obstruction_json(o: &Obstruction) -> Value {
    match o {
        Obstruction::NoObstruction => json!({"obstructed": false}),
        Obstruction::Obstructed(reason) => json!({"obstructed": true, "reason": reason.to_string()}),
    }
}

fn obstruction_text(o: &Obstruction) -> String {
    match o {
        Obstruction::NoObstruction => "NoObstruction".into(),
        Obstruction::Obstructed(reason) => format!("Obstructed ({reason})"),
    }
}

fn roots_json(r: &RootValues) -> Value {
    match r {
        RootValues::Exact(v) => report::vector(v),
        RootValues::Approximate(v) => json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()),
        RootValues::Unavailable => Value::Null,
    }
}

pub fn validate(source: &str) -> Result<Report> {
    let l = load(source)?;
    let a = &l.algebra;
    let forms: Vec<String> = l.forms.iter().map(|(k, f)| format!("{k} (degree {})", f.degree())).collect();
    let metrics: Vec<&String> = l.metrics.keys().collect();
    let mut r = Report::new(true);
    r.field("name", a.name())
        .field("field", a.field().to_string())
        .field("dim", a.dim())
        .field("nonzero_brackets", a.nonzero_brackets().len())
        .field("jacobi", true)
        .field("forms", json!(l.forms.iter().map(|(k, f)| (k.clone(), f.degree())).collect::<BTreeMap<_, _>>()))
        .field("metrics", json!(metrics));
    r.line(format!("{}: {} Lie algebra of dimension {}", a.name(), a.field(), a.dim()))
        .line(format!("nonzero brackets: {}", a.nonzero_brackets().len()))
        .line("antisymmetry and Jacobi: ok")
        .line(format!("forms: {}", if forms.is_empty() { "none".into() } else { forms.join(", ") }))
        .line(format!(
            "metrics: {}",
            if metrics.is_empty() { "none".into() } else { metrics.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", ") }
        ));
    Ok(r)
}

pub fn contact_check(source: &str, form: &str) -> Result<Report> {
    let l = load(source)?;
    let (ok, top) = forms::is_contact(&l.algebra, l.form(form)?)?;
    let mut r = Report::new(ok);
    r.field("contact", ok).field("top_coefficient", report::scalar(&top));
    r.line(format!(
        "{form} is {}contact on {}: η∧(dη)^n = {top} e1∧…∧e{}",
        if ok { "" } else { "not " },
        l.algebra.name(),
        l.algebra.dim()
    ));
    Ok(r)
}

pub fn reeb(source: &str, form: &str) -> Result<Report> {
    let c = contact(source, form)?;
    let central = c.ad_reeb().is_zero();
    let mut r = Report::new(true);
    r.field("reeb", report::vector(c.reeb()))
        .field("top_coefficient", report::scalar(c.top_coefficient()))
        .field("central", central);
    r.line(format!("ξ = {}", report::vector_text(c.reeb())))
        .line(format!("ad(ξ) {} 0", if central { "=" } else { "≠" }));
    Ok(r)
}

pub fn analyze(source: &str, form: &str, metric: Option<&str>, auto: bool) -> Result<Report> {
    let l = load(source)?;
    let c = ContactStructure::new(l.algebra.clone(), l.form(form)?.clone())?;
    let mut r = Report::new(false);
    let result = if auto {
        let g = construct_associated_metric(&c)?;
        r.field("metric", json!({"name": "auto", "matrix": report::float_matrix(&g.matrix().to_rows())}));
        analyze_kcontact(&c, &g)?
    } else {
        let name = match metric {
            Some(m) => m.to_string(),
            None if l.metrics.len() == 1 => l.metrics.keys().next().expect("one metric").clone(),
            None => return Err(Error::input("choose a metric with --metric NAME or pass --auto-metric")),
        };
        r.field("metric", json!({"name": name}));
        analyze_kcontact(&c, l.metric(&name)?)?
    };
    fill_analysis(&mut r, &c, &result)?;
    Ok(r)
}

fn fill_analysis(r: &mut Report, c: &ContactStructure, a: &MainTheoremReport) -> Result<()> {
    r.verdict = a.is_kcontact;
    let obstruction = kcontact_obstruction(c);
    r.field("kcontact", a.is_kcontact)
        .field("dim", a.dim)
        .field("exact_metric", a.exact_metric)
        .field("ad_xi_zero", a.ad_xi_zero)
        .field("obstruction", obstruction_json(&obstruction))
        .field("complexification_roots", roots_json(&a.complexification_roots))
        .field("notes", json!(a.notes));
    r.line(format!(
        "{} metric: {}K-contact",
        if a.exact_metric { "exact" } else { "floating" },
        if a.is_kcontact { "" } else { "not " }
    ))
    .line(format!("ad(ξ) {} 0", if a.ad_xi_zero { "=" } else { "≠" }))
    .line(format!("obstruction: {}", obstruction_text(&obstruction)))
    .line(format!("roots of ad(ξ^C): {}", a.complexification_roots));
    for n in &a.notes {
        r.line(format!("note: {n}"));
    }
    match &a.quotient {
        Some(s) => {
            let forms = BTreeMap::from([("omega".to_string(), s.omega().clone())]);
            let file = AlgebraFile::from_parts(&s.algebra().clone().with_name(format!("{}_quotient", c.algebra().name())), &forms, &BTreeMap::new())?;
            r.field("quotient", serde_json::to_value(&file).expect("files serialize"));
            r.line(format!("quotient: symplectic algebra of dimension {}", s.dim()));
            for (idx, v) in s.omega().terms() {
                r.line(format!("  ω(f{}, f{}) = {v}", idx[0] + 1, idx[1] + 1));
            }
        }
        None => {
            r.field("quotient", Value::Null);
        }
    }
    Ok(())
}

pub fn roots(source: &str, form: &str) -> Result<Report> {
    let c = contact(source, form)?;
    let cc = if c.field() == FieldKind::Real { c.complexify()? } else { c };
    let mut r = Report::new(true);
    r.field("complexified", cc.algebra().name());
    match root_decomposition(&cc)? {
        Roots::Exact(rd) => {
            r.field("exact", true);
            let spaces: Vec<Value> = rd
                .spaces()
                .iter()
                .map(|s| json!({"root": report::scalar(&s.root), "basis": s.basis.iter().map(|v| report::vector(v)).collect::<Vec<_>>()}))
                .collect();
            r.field("spaces", spaces);
            r.line(format!("roots of ad(ξ) on {}: {}", cc.algebra().name(), RootValues::Exact(rd.roots())));
            for s in rd.spaces() {
                let basis: Vec<String> = s.basis.iter().map(|v| report::vector_text(v)).collect();
                r.line(format!("  g_{}: {}", s.root, basis.join(", ")));
            }
        }
        Roots::Approximate(a) => {
            r.field("exact", false).field("warning", a.warning.clone());
            let spaces: Vec<Value> = a
                .spaces
                .iter()
                .map(|s| {
                    let basis: Vec<Vec<[f64; 2]>> =
                        s.basis.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect();
                    json!({"root": [s.root.re, s.root.im], "basis": basis})
                })
                .collect();
            r.field("spaces", spaces);
            r.line(format!("warning: {}", a.warning));
            for s in &a.spaces {
                r.line(format!("  root ≈ {:.9}{:+.9}i, multiplicity {}", s.root.re, s.root.im, s.basis.len()));
            }
        }
    }
    let t = verify_reeb_theorem(&cc)?;
    let failures: Vec<String> = t.hypothesis_failures.iter().map(ToString::to_string).collect();
    r.field(
        "vanishing_theorem",
        json!({"applicable": t.applicable, "hypothesis_failures": failures, "ad_xi_zero": t.conclusion_verified}),
    );
    if t.applicable {
        r.line(format!("n > 1 and diagonalizable: ad(ξ) = 0 {}", if t.conclusion_verified { "holds" } else { "FAILS" }));
        if !t.conclusion_verified {
            return Err(Error::invariant("diagonalizable ad(ξ) with n > 1 is nonzero"));
        }
    } else {
        r.line(format!("vanishing theorem not applicable: {}", failures.join(", ")));
    }
    Ok(r)
}

pub fn quotient(source: &str, form: &str, output: &Path) -> Result<Report> {
    let c = contact(source, form)?;
    let s = central_quotient(&c)?;
    let name = format!("{}_quotient", c.algebra().name());
    let forms = BTreeMap::from([("omega".to_string(), s.omega().clone())]);
    let file = AlgebraFile::from_parts(&s.algebra().clone().with_name(name.clone()), &forms, &BTreeMap::new())?;
    write_file(output, &file)?;
    let mut r = Report::new(true);
    r.field("name", name.clone()).field("dim", s.dim()).field("output", output.display().to_string());
    r.line(format!("wrote {name} (dimension {}) to {}", s.dim(), output.display()));
    for (idx, v) in s.omega().terms() {
        r.line(format!("  ω(f{}, f{}) = {v}", idx[0] + 1, idx[1] + 1));
    }
    Ok(r)
}

pub fn extend(source: &str, omega: &str, output: &Path) -> Result<Report> {
    let l = load(source)?;
    let name = format!("{}_ext", l.algebra.name());
    let c = contact_lie::extension::extend(l.algebra.clone().with_name(name.clone()), l.form(omega)?.clone())?;
    let forms = BTreeMap::from([("eta".to_string(), c.eta().clone())]);
    write_file(output, &AlgebraFile::from_parts(c.algebra(), &forms, &BTreeMap::new())?)?;
    let mut r = Report::new(true);
    r.field("name", name.clone())
        .field("dim", c.dim())
        .field("reeb", report::vector(c.reeb()))
        .field("top_coefficient", report::scalar(c.top_coefficient()))
        .field("output", output.display().to_string());
    r.line(format!("wrote {name} (dimension {}) to {}", c.dim(), output.display()))
        .line(format!("η = e{}*, ξ = {}", c.dim(), report::vector_text(c.reeb())));
    Ok(r)
}

pub fn normal_form(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    let b = io::parse_real_matrix(&text)?;
    let nf = skew_normal_form(&b)?;
    let residual = max_abs_diff(&nf.q.transpose().mul(&nf.assembled()).mul(&nf.q), &b);
    let mut r = Report::new(true);
    r.field("blocks", json!(nf.blocks))
        .field("zero_count", nf.zero_count)
        .field("q", report::float_matrix(&nf.q.to_rows()))
        .field("residual", residual);
    let blocks: Vec<String> = nf.blocks.iter().map(|x| format!("{x:.12}")).collect();
    r.line(format!("blocks: [{}]", blocks.join(", ")))
        .line(format!("zero rows: {}", nf.zero_count))
        .line(format!("reconstruction residual: {residual:.3e}"));
    Ok(r)
}

pub fn catalog_list() -> Report {
    let mut r = Report::new(true);
    let entries: Vec<Value> = catalog::catalog()
        .iter()
        .map(|e| {
            r.line(format!("{:<20} {:<11} {}", e.name, kind_name(e.kind), e.description));
            json!({"name": e.name, "kind": kind_name(e.kind), "dim": e.algebra.dim(), "description": e.description})
        })
        .collect();
    r.field("entries", entries);
    r
}

fn kind_name(kind: EntryKind) -> &'static str {
    match kind {
        EntryKind::Contact => "contact",
        EntryKind::Symplectic => "symplectic",
        EntryKind::Reference => "reference",
    }
}

pub fn catalog_show(name: &str) -> Result<Report> {
    let e = catalog::entry(name).ok_or_else(|| Error::input(format!("no catalog entry named {name:?}")))?;
    let mut r = Report::new(true);
    r.field("name", e.name)
        .field("kind", kind_name(e.kind))
        .field("description", e.description)
        .field("dim", e.algebra.dim())
        .field("file", serde_json::to_value(e.to_file()).expect("files serialize"));
    r.line(format!("{}: {}", e.name, e.description))
        .line(format!("dim {}, {}", e.algebra.dim(), kind_name(e.kind)));
    match e.kind {
        EntryKind::Contact => {
            let c = e.contact_structure()?;
            let m = minimal_polynomial(&c.ad_reeb());
            let o = kcontact_obstruction(&c);
            r.field("contact", true)
                .field("top_coefficient", report::scalar(c.top_coefficient()))
                .field("reeb", report::vector(c.reeb()))
                .field("minimal_polynomial", m.to_string())
                .field("squarefree", m.is_squarefree())
                .field("kcontact_obstruction", obstruction_json(&o));
            r.line(format!("contact, top coefficient {}", c.top_coefficient()))
                .line(format!("reeb {}", report::vector_text(c.reeb())))
                .line(format!(
                    "minimal polynomial of ad(ξ): {m} ({}squarefree)",
                    if m.is_squarefree() { "" } else { "not " }
                ))
                .line(format!("kcontact_obstruction: {}", obstruction_text(&o)));
        }
        EntryKind::Symplectic => {
            let s = e.symplectic()?;
            r.field("symplectic", true);
            r.line(format!("symplectic form of rank {}", s.omega().as_matrix()?.rank()));
        }
        EntryKind::Reference => {
            if let Some(eta) = e.eta() {
                let (ok, top) = forms::is_contact(&e.algebra, eta)?;
                r.field("contact", ok).field("top_coefficient", report::scalar(&top));
                r.line(format!("eta is {}contact, top coefficient {top}", if ok { "" } else { "not " }));
            }
        }
    }
    Ok(r)
}
