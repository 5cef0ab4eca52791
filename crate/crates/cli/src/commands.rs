//! Command implementations. Each returns the text report and the equivalent JSON document.

use std::fmt::Write as _;

use clap::ValueEnum;
use grassmann_core::decompose::{
    blade_span, carve_in_complement, carve_internal_with, carve_minimal_internal, classify_carving,
    classify_factorization, factor_in_complement, factor_maximal_orthogonal, factor_orthogonal_with, CarveFlags,
    FactorFlags,
};
use grassmann_core::fermion::{
    scom_apply, scom_direct, scom_expand, scom_expand_diagonal, Bracket, NormalOrderedOperator, Order,
};
use grassmann_core::simplicity::{
    cartan_first_order, cartan_second_order, is_simple, plucker_dedupe, plucker_evaluate, plucker_generate,
    plucker_histogram, CartanVerdict, PluckerForm, PluckerRelation,
};
use grassmann_core::spaces::{grade_profile, inner_space, outer_space};
use grassmann_core::{Blade, Error, Gaussian, IndexTuple, Multivector, Rational, Scalar, Subspace, MAX_DIM};
use num_traits::One;
use serde_json::{json, Map, Value};

use crate::text::{mv_text, operator_text, parse_indices, parse_mv, parse_vectors, state_text, ParseError, ScalarText};
use crate::{
    CarveArgs, CarveMode, Cli, Command, FactorArgs, FactorMode, FermionArgs, FermionOp, Field, MvArgs, PluckerArgs,
    ScomArgs, ScomForm, SimpleArgs, SCHEMA,
};

/// Largest dimension at which `fermion scom` cross-checks its forms on every basis state.
pub const EXHAUSTIVE_CHECK_DIM: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl CliError {
    fn precondition(msg: impl Into<String>) -> Self {
        CliError { code: 4, msg: msg.into() }
    }

    fn disagreement(msg: impl Into<String>) -> Self {
        CliError { code: 1, msg: format!("internal disagreement: {}", msg.into()) }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionCap(_) | Error::Resource(_) => 3,
            _ => 4,
        };
        CliError { code, msg: e.to_string() }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError { code: 2, msg: e.to_string() }
    }
}

type Res<T> = Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Res<Report> {
    let field = cli.field;
    match &cli.command {
        Command::Spaces(a) => on_field(field, || spaces::<Rational>(a), || spaces::<Gaussian>(a)),
        Command::Factor(a) => on_field(field, || factor::<Rational>(a), || factor::<Gaussian>(a)),
        Command::Carve(a) => on_field(field, || carve::<Rational>(a), || carve::<Gaussian>(a)),
        Command::Simple(a) => on_field(field, || simple::<Rational>(a), || simple::<Gaussian>(a)),
        Command::Plucker(a) => plucker(a),
        Command::Fermion(a) => fermion(a),
    }
}

fn on_field(field: Field, r: impl FnOnce() -> Res<Report>, g: impl FnOnce() -> Res<Report>) -> Res<Report> {
    match field {
        Field::Rational => r(),
        Field::Gaussian => g(),
    }
}

fn check_dim(n: usize) -> Res<()> {
    if n == 0 {
        Err(Error::ZeroDimension.into())
    } else if n > MAX_DIM {
        Err(Error::DimensionCap(n).into())
    } else {
        Ok(())
    }
}

fn header(command: &str, field: Option<&str>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    if let Some(f) = field {
        m.insert("field".into(), f.into());
    }
    m
}

fn parse_input<S: ScalarText>(a: &MvArgs) -> Res<Multivector<S>> {
    check_dim(a.dim)?;
    Ok(parse_mv::<S>(a.dim, &a.mv)?)
}

fn vector_text<S: ScalarText>(v: &[S]) -> String {
    mv_text(&Multivector::vector(v).expect("subspace vectors have a valid dimension"))
}

fn basis_texts<S: ScalarText>(s: &Subspace<S>) -> Vec<String> {
    s.basis().iter().map(|v| vector_text(v)).collect()
}

fn space_line(name: &str, s: &[String]) -> String {
    format!("{name} space: dim {}, basis [{}]\n", s.len(), s.join(", "))
}

fn spaces<S: ScalarText>(a: &MvArgs) -> Res<Report> {
    let m = parse_input::<S>(a)?;
    let inner = basis_texts(&inner_space(&m)?);
    let outer = basis_texts(&outer_space(&m)?);
    let mut text = format!("M = {}\n", mv_text(&m));
    text += &space_line("inner", &inner);
    text += &space_line("outer", &outer);
    let grades = if m.is_zero() {
        text += "grades undefined (M = 0)\n";
        Value::Null
    } else {
        let g = grade_profile(&m)?;
        let _ = writeln!(
            text,
            "grades: igrade {}, bgrade {}, tgrade {}, ograde {}",
            g.igrade, g.bgrade, g.tgrade, g.ograde
        );
        json!({ "igrade": g.igrade, "bgrade": g.bgrade, "tgrade": g.tgrade, "ograde": g.ograde })
    };
    let mut j = header("spaces", Some(S::FIELD));
    j.insert("dim".into(), a.dim.into());
    j.insert("mv".into(), mv_text(&m).into());
    j.insert("inner".into(), json!({ "dim": inner.len(), "basis": inner }));
    j.insert("outer".into(), json!({ "dim": outer.len(), "basis": outer }));
    j.insert("grades".into(), grades);
    Ok(Report { text, json: j.into() })
}

fn parse_blade<S: ScalarText>(n: usize, text: Option<&str>, mode: &str) -> Res<Multivector<S>> {
    let text = text.ok_or_else(|| CliError::precondition(format!("mode {mode} needs --blade")))?;
    let b = parse_mv::<S>(n, text)?;
    blade_span(&b)?;
    Ok(b)
}

fn parse_complement<S: ScalarText>(n: usize, text: &str) -> Res<Subspace<S>> {
    let vs = parse_vectors::<S>(n, text)?;
    Ok(Subspace::span(n, &vs)?)
}

fn decomposition_report(
    command: &str,
    field: &str,
    dim: usize,
    mode: &str,
    rows: [(&str, String); 3],
    check: &str,
    flags: [(&str, bool); 3],
) -> Report {
    let mut text = String::new();
    for (k, v) in &rows {
        let _ = writeln!(text, "{k} = {v}");
    }
    let _ = writeln!(text, "check: {check}");
    let flag_text: Vec<String> = flags.iter().map(|(k, v)| format!("{k} {v}")).collect();
    let _ = writeln!(text, "flags: {}", flag_text.join(", "));
    let mut j = header(command, Some(field));
    j.insert("dim".into(), dim.into());
    j.insert("mode".into(), mode.into());
    for (k, v) in rows {
        j.insert(k.to_lowercase(), v.into());
    }
    j.insert("check".into(), check.into());
    j.insert("flags".into(), Value::Object(flags.iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect()));
    Report { text, json: j.into() }
}

fn mode_name<E: ValueEnum>(e: &E) -> String {
    e.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn factor<S: ScalarText>(a: &FactorArgs) -> Res<Report> {
    let m = parse_input::<S>(&a.input)?;
    let n = m.dim();
    let mode = mode_name(&a.mode);
    let (b, nn, flags): (Multivector<S>, Multivector<S>, FactorFlags) = match a.mode {
        FactorMode::MaximalOrthogonal => {
            if a.complement.is_some() {
                return Err(CliError::precondition("--complement only applies to mode in-complement"));
            }
            let f = match &a.blade {
                Some(t) => factor_orthogonal_with(&m, &parse_blade::<S>(n, Some(t), &mode)?)?,
                None => factor_maximal_orthogonal(&m)?,
            };
            (f.b, f.n, f.flags)
        }
        FactorMode::InComplement => {
            let b = parse_blade::<S>(n, a.blade.as_deref(), &mode)?;
            let v = match &a.complement {
                Some(t) => parse_complement::<S>(n, t)?,
                None => blade_span(&b)?.orth_complement(),
            };
            let nn = factor_in_complement(&m, &b, &v)?;
            let flags = classify_factorization(&m, &b, &nn)?;
            (b, nn, flags)
        }
    };
    if b.wedge(&nn)? != m {
        return Err(CliError::disagreement("B ^ N differs from M"));
    }
    Ok(decomposition_report(
        "factor",
        S::FIELD,
        n,
        &mode,
        [("M", mv_text(&m)), ("B", mv_text(&b)), ("N", mv_text(&nn))],
        "B ^ N = M",
        [("tight", flags.tight), ("orthogonal", flags.orthogonal), ("maximal", flags.maximal)],
    ))
}

fn carve<S: ScalarText>(a: &CarveArgs) -> Res<Report> {
    let m = parse_input::<S>(&a.input)?;
    let n = m.dim();
    let mode = mode_name(&a.mode);
    let (nn, b, flags): (Multivector<S>, Multivector<S>, CarveFlags) = match a.mode {
        CarveMode::MinimalInternal => {
            if a.complement.is_some() {
                return Err(CliError::precondition("--complement only applies to mode in-complement"));
            }
            let c = match &a.blade {
                Some(t) => carve_internal_with(&m, &parse_blade::<S>(n, Some(t), &mode)?)?,
                None => carve_minimal_internal(&m)?,
            };
            (c.n, c.b, c.flags)
        }
        CarveMode::InComplement => {
            let b = parse_blade::<S>(n, a.blade.as_deref(), &mode)?;
            let v = match &a.complement {
                Some(t) => parse_complement::<S>(n, t)?,
                None => blade_span(&b)?,
            };
            let nn = carve_in_complement(&m, &b, &v)?;
            let flags = classify_carving(&m, &nn, &b)?;
            (nn, b, flags)
        }
    };
    if nn.lcontr(&b)? != m {
        return Err(CliError::disagreement("N _| B differs from M"));
    }
    Ok(decomposition_report(
        "carve",
        S::FIELD,
        n,
        &mode,
        [("M", mv_text(&m)), ("B", mv_text(&b)), ("N", mv_text(&nn))],
        "N _| B = M",
        [("tight", flags.tight), ("internal", flags.internal), ("minimal", flags.minimal)],
    ))
}

fn homogeneous<S: Scalar>(m: &Multivector<S>) -> Res<usize> {
    if m.is_zero() {
        return Err(Error::ZeroMultivector.into());
    }
    Ok(m.homogeneous_grade().ok_or(Error::NotHomogeneous)?)
}

/// First relation of the deduplicated system that `h` violates, in primitive form, with its value.
fn plucker_witness<S: ScalarText>(h: &Multivector<S>, form: PluckerForm) -> Res<Option<(PluckerRelation, S)>> {
    let p = homogeneous(h)?;
    if p == 0 {
        return Ok(None);
    }
    let rels = plucker_dedupe(plucker_generate(p, h.dim(), form)?);
    let values = plucker_evaluate(&rels, h)?;
    // reported with the content divided out, so the value belongs to the primitive equation
    Ok(rels.into_iter().zip(values).find(|(_, v)| !v.is_zero()).map(|(r, _)| {
        let r = r.primitive();
        let v = r.evaluate(h);
        (r, v)
    }))
}

fn cartan_text(v: &CartanVerdict) -> String {
    format!("conditions: i {}, ii {}, iii {}", v.i, v.ii, v.iii)
}

fn simple<S: ScalarText>(a: &SimpleArgs) -> Res<Report> {
    let m = parse_input::<S>(&a.input)?;
    let criterion = mode_name(&a.criterion);
    let mut extra: Vec<String> = Vec::new();
    let mut j = header("simple", Some(S::FIELD));
    j.insert("dim".into(), a.input.dim.into());
    j.insert("mv".into(), mv_text(&m).into());
    j.insert("criterion".into(), criterion.clone().into());
    let verdict = match a.criterion {
        crate::Criterion::Spaces => is_simple(&m)?,
        crate::Criterion::Cartan1 | crate::Criterion::Cartan2 => {
            homogeneous(&m)?;
            let v = if a.criterion == crate::Criterion::Cartan1 {
                cartan_first_order(&m)?
            } else {
                cartan_second_order(&m)?
            };
            if !v.agree() {
                return Err(CliError::disagreement(cartan_text(&v)));
            }
            extra.push(cartan_text(&v));
            j.insert("conditions".into(), json!({ "i": v.i, "ii": v.ii, "iii": v.iii }));
            v.all()
        }
        crate::Criterion::PluckerClassical | crate::Criterion::PluckerReduced => {
            let form = if a.criterion == crate::Criterion::PluckerClassical {
                PluckerForm::Classical
            } else {
                PluckerForm::Reduced
            };
            match plucker_witness(&m, form)? {
                None => {
                    j.insert("violated".into(), Value::Null);
                    true
                }
                Some((rel, value)) => {
                    extra.push(format!("violated: {rel}"));
                    extra.push(format!("value: {}", value.text()));
                    j.insert("violated".into(), json!({ "relation": rel.to_string(), "value": value.text() }));
                    false
                }
            }
        }
    };
    // every criterion must match the space comparison
    if verdict != is_simple(&m)? {
        return Err(CliError::disagreement(format!("criterion {criterion} disagrees with the space comparison")));
    }
    let mut text = format!("M = {}\ncriterion: {criterion}\nsimple: {verdict}\n", mv_text(&m));
    for line in extra {
        text += &line;
        text.push('\n');
    }
    j.insert("simple".into(), verdict.into());
    Ok(Report { text, json: j.into() })
}

fn histogram_text(h: &[(usize, usize)]) -> String {
    if h.is_empty() {
        return "no relations".into();
    }
    let parts: Vec<String> = h.iter().map(|(terms, count)| format!("{terms}-term: {count}")).collect();
    parts.join(", ")
}

fn plucker(a: &PluckerArgs) -> Res<Report> {
    let form: PluckerForm = a.form.parse().map_err(|e: Error| CliError { code: 2, msg: e.to_string() })?;
    check_dim(a.n)?;
    let mut rels = plucker_generate(a.p, a.n, form)?;
    if a.dedupe {
        rels = plucker_dedupe(rels);
    } else {
        rels.sort();
    }
    let hist = plucker_histogram(&rels);
    let lines: Vec<String> = rels.iter().map(ToString::to_string).collect();
    let text = if a.count_only {
        format!("{}\n", histogram_text(&hist))
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    };
    let mut j = header("plucker", None);
    j.insert("p".into(), a.p.into());
    j.insert("n".into(), a.n.into());
    j.insert("form".into(), form.name().into());
    j.insert("dedupe".into(), a.dedupe.into());
    j.insert("count".into(), rels.len().into());
    j.insert(
        "histogram".into(),
        hist.iter().map(|&(terms, count)| json!({ "terms": terms, "count": count })).collect::<Vec<_>>().into(),
    );
    if !a.count_only {
        j.insert("relations".into(), lines.into());
    }
    Ok(Report { text, json: j.into() })
}

fn index_blade(text: &str) -> Res<Blade> {
    let idx = parse_indices(text)?;
    Ok(IndexTuple::increasing(&idx)?.to_blade())
}

fn indices(b: Blade) -> Vec<u8> {
    b.indices().collect()
}

fn fermion(a: &FermionArgs) -> Res<Report> {
    match &a.op {
        FermionOp::Scom(s) => scom(a.dim, s),
    }
}

fn operator_json(op: &NormalOrderedOperator<Rational>) -> Value {
    let order = match op.order() {
        Order::CreateAnnihilate => "create-annihilate",
        Order::AnnihilateCreate => "annihilate-create",
    };
    let terms: Vec<Value> = op
        .terms()
        .map(|(c, cr, an)| json!({ "coeff": c.text(), "create": indices(cr), "annihilate": indices(an) }))
        .collect();
    json!({ "text": operator_text(op), "order": order, "terms": terms })
}

fn state_json(m: &Multivector<Rational>) -> Value {
    m.terms().map(|(b, c)| json!({ "coeff": c.text(), "blade": indices(b) })).collect::<Vec<_>>().into()
}

fn scom(dim: Option<usize>, a: &ScomArgs) -> Res<Report> {
    let i = index_blade(&a.i)?;
    let j = index_blade(&a.j)?;
    let k = a.apply.as_deref().map(index_blade).transpose()?;
    let used = i | j | k.unwrap_or(Blade::SCALAR);
    let n = dim.unwrap_or(used.max_index().max(1));
    check_dim(n)?;
    if used.max_index() > n {
        return Err(Error::IndexOutOfRange { index: used.max_index(), dim: n }.into());
    }
    match a.form {
        ScomForm::Diag if i != j => return Err(CliError::precondition("form diag needs i = j")),
        ScomForm::Direct if k.is_none() => return Err(CliError::precondition("form direct needs --apply")),
        _ => {}
    }

    // every form denotes [a+_i, a_j]
    let up = NormalOrderedOperator::<Rational>::creation(n, i)?;
    let down = NormalOrderedOperator::<Rational>::annihilation(n, j)?;
    let e7 = scom_expand::<Rational>(n, i, j, Bracket::DaggerFirst)?;
    let swap_sign = if i.grade() * j.grade() % 2 == 0 { -Rational::one() } else { Rational::one() };
    let e8 = scom_expand::<Rational>(n, j, i, Bracket::PlainFirst)?.scale(&swap_sign);
    let diag = if i == j { Some(scom_expand_diagonal::<Rational>(n, i, Bracket::DaggerFirst)?) } else { None };

    let mut states: Vec<Blade> = if n <= EXHAUSTIVE_CHECK_DIM {
        (0..1u32 << n).map(Blade::from_mask).collect()
    } else if (i | j).grade() <= EXHAUSTIVE_CHECK_DIM {
        (i | j).subsets().collect()
    } else {
        Vec::new()
    };
    if let Some(k) = k.filter(|k| !states.contains(k)) {
        states.push(k);
    }
    for &s in &states {
        let v = Multivector::basis(n, s)?;
        let reference = scom_apply(&up, &down, &v)?;
        let direct = match scom_direct(i, j, s) {
            Some((sign, b)) => Multivector::basis(n, b)?.scale(&Rational::from_i64(sign.into())),
            None => Multivector::zero(n)?,
        };
        let mut candidates = vec![("expand7", e7.apply(&v)?), ("expand8", e8.apply(&v)?), ("direct", direct)];
        if let Some(d) = &diag {
            candidates.push(("diag", d.apply(&v)?));
        }
        for (name, got) in candidates {
            if got != reference {
                return Err(CliError::disagreement(format!(
                    "form {name} gives {} on {}, composition gives {}",
                    state_text(&got),
                    state_text(&v),
                    state_text(&reference)
                )));
            }
        }
    }

    let op = match a.form {
        ScomForm::Expand7 => Some(&e7),
        ScomForm::Expand8 => Some(&e8),
        ScomForm::Diag => diag.as_ref(),
        ScomForm::Direct => None,
    };
    let mut text = String::new();
    let mut doc = header("fermion scom", None);
    doc.insert("dim".into(), n.into());
    doc.insert("i".into(), indices(i).into());
    doc.insert("j".into(), indices(j).into());
    doc.insert("form".into(), mode_name(&a.form).into());
    doc.insert("operator".into(), op.map_or(Value::Null, operator_json));
    if let Some(op) = op {
        let _ = writeln!(text, "{}", operator_text(op));
    }
    match k {
        Some(k) => {
            let v = Multivector::basis(n, k)?;
            let result = scom_apply(&up, &down, &v)?;
            let trace = format!("{} -> {}", state_text(&v), state_text(&result));
            let _ = writeln!(text, "{trace}");
            doc.insert("apply".into(), json!({ "state": indices(k), "result": state_json(&result), "text": trace }));
        }
        None => {
            doc.insert("apply".into(), Value::Null);
        }
    }
    doc.insert("checked_states".into(), states.len().into());
    Ok(Report { text, json: doc.into() })
}
