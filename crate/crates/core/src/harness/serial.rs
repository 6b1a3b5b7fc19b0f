//! JSON documents for algebras, elements, maps, witnesses, partial isometries
//! and symplectic decompositions. Field elements are written in their text
//! encoding (`3`, `[1,0,1]`, `3/4`).

use serde::{Deserialize, Serialize};

use crate::autgroup::{AutWitness, Rejection, TwoLocalVerdict};
use crate::cayley::{classify, AlgebraRef, CayleyAlgebra, Classification, Octonion, DIM};
use crate::char2lab::{Char2Context, SympDecomp, W_DIM};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::quadform::{LinMap, PartialIsometry};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub id: String,
    pub field: String,
    /// `structure_constants[i][j][k]`: coefficient of `b_k` in `b_i b_j`
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub norms: Vec<String>,
    pub polar: Vec<Vec<String>>,
    pub unit: Vec<String>,
    pub classification: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub algebra: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub algebra: String,
    /// pairs `[x, target]`
    pub claim: Vec<[Vec<String>; 2]>,
    pub matrix: Vec<Vec<String>>,
    pub products_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectionDoc {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub product: Vec<String>,
    pub image_of_product: Vec<String>,
    pub product_of_images: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialIsometryDoc {
    pub algebra: String,
    pub domain: Vec<Vec<String>>,
    pub images: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SympDecompDoc {
    pub algebra: String,
    pub w_basis: Vec<Vec<String>>,
    pub sigma: Vec<Vec<String>>,
    pub w_sigma: Vec<String>,
}

/// Output of the split 2-local decision. Exactly one of `certificate` and
/// `rejection` is present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub verdict: String,
    pub lambda: Option<String>,
    pub certificate: Option<WitnessDoc>,
    pub rejection: Option<RejectionDoc>,
    pub explanation: Option<String>,
    pub transcript: Vec<String>,
}

fn strs(v: &[FieldElem]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strs(m.row(r))).collect()
}

fn elems(f: Field, v: &[String], len: usize, ctx: &str) -> Result<Vec<FieldElem>> {
    if v.len() != len {
        return Err(Error::parse(
            ctx,
            format!("expected {len} entries, got {}", v.len()),
        ));
    }
    v.iter()
        .enumerate()
        .map(|(i, s)| {
            f.parse_elem(s)
                .map_err(|e| Error::parse(format!("{ctx}[{i}]"), e.to_string()))
        })
        .collect()
}

fn parse_matrix(f: Field, rows: &[Vec<String>], n: usize, ctx: &str) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::parse(
            ctx,
            format!("expected {n} rows, got {}", rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(n * n);
    for (r, row) in rows.iter().enumerate() {
        data.extend(elems(f, row, n, &format!("{ctx}[{r}]"))?);
    }
    Ok(Matrix::from_rows(f, n, n, data))
}

fn parse_element(alg: &AlgebraRef, v: &[String], ctx: &str) -> Result<Octonion> {
    Octonion::from_coords(alg, elems(alg.field(), v, DIM, ctx)?)
}

fn check_algebra_id(alg: &AlgebraRef, id: &str) -> Result<()> {
    if alg.id() != id {
        return Err(Error::parse(
            "algebra",
            format!("document refers to {id:?}, expected {:?}", alg.id()),
        ));
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("documents serialize")
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str, ctx: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(ctx, e.to_string()))
}

pub fn algebra_doc(alg: &AlgebraRef) -> AlgebraDoc {
    let structure_constants = (0..DIM)
        .map(|i| {
            (0..DIM)
                .map(|j| {
                    (0..DIM)
                        .map(|k| alg.structure_constant(i, j, k).to_string())
                        .collect()
                })
                .collect()
        })
        .collect();
    AlgebraDoc {
        id: alg.id().to_string(),
        field: alg.field().to_string(),
        structure_constants,
        norms: strs(alg.basis_norms()),
        polar: matrix_rows(alg.polar_matrix()),
        unit: strs(alg.unit_coords()),
        classification: alg.classification().tag().to_string(),
    }
}

pub fn algebra_to_text(alg: &AlgebraRef) -> String {
    json(&algebra_doc(alg))
}

/// Loads an algebra without assuming its laws. If the basis identities hold
/// the algebra is re-classified and the recorded tag must agree with the
/// recomputed certificate.
pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<AlgebraRef> {
    let f = Field::parse(&doc.field).map_err(|e| Error::parse("field", e.to_string()))?;
    if doc.structure_constants.len() != DIM {
        return Err(Error::parse("structure_constants", "expected 8 rows"));
    }
    let mut table = Vec::with_capacity(DIM * DIM);
    for (i, row) in doc.structure_constants.iter().enumerate() {
        if row.len() != DIM {
            return Err(Error::parse(
                format!("structure_constants[{i}]"),
                "expected 8 entries",
            ));
        }
        for (j, prod) in row.iter().enumerate() {
            let c = elems(f, prod, DIM, &format!("structure_constants[{i}][{j}]"))?;
            table.push(
                c.into_iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .collect::<Vec<_>>(),
            );
        }
    }
    let norms = elems(f, &doc.norms, DIM, "norms")?;
    let polar = parse_matrix(f, &doc.polar, DIM, "polar")?;
    let unit = elems(f, &doc.unit, DIM, "unit")?;
    let raw = CayleyAlgebra::from_raw_parts(
        doc.id.clone(),
        f,
        table,
        norms,
        polar,
        unit,
        Classification::Unclassified,
    )
    .map_err(|e| Error::parse("algebra", e.to_string()))?;
    let alg = match raw.validate() {
        Ok(()) => classify(&raw)?,
        Err(_) => raw,
    };
    let tag = alg.classification().tag();
    if doc.classification != tag && doc.classification != "unclassified" {
        return Err(Error::parse(
            "classification",
            format!("document says {:?}, recomputed {tag:?}", doc.classification),
        ));
    }
    Ok(alg)
}

pub fn algebra_from_text(text: &str) -> Result<AlgebraRef> {
    algebra_from_doc(&from_json(text, "algebra document")?)
}

pub fn element_to_text(x: &Octonion) -> String {
    serde_json::to_string(&strs(x.coords())).expect("strings serialize")
}

pub fn element_from_text(alg: &AlgebraRef, text: &str) -> Result<Octonion> {
    let v: Vec<String> = from_json(text, "element")?;
    parse_element(alg, &v, "element")
}

pub fn map_doc(m: &LinMap) -> MapDoc {
    MapDoc {
        algebra: m.algebra().id().to_string(),
        matrix: matrix_rows(m.matrix()),
    }
}

pub fn map_from_doc(alg: &AlgebraRef, doc: &MapDoc) -> Result<LinMap> {
    check_algebra_id(alg, &doc.algebra)?;
    LinMap::new(alg, parse_matrix(alg.field(), &doc.matrix, DIM, "matrix")?)
}

pub fn map_to_text(m: &LinMap) -> String {
    json(&map_doc(m))
}

pub fn map_from_text(alg: &AlgebraRef, text: &str) -> Result<LinMap> {
    map_from_doc(alg, &from_json(text, "map document")?)
}

pub fn witness_doc(w: &AutWitness) -> WitnessDoc {
    WitnessDoc {
        algebra: w.map().algebra().id().to_string(),
        claim: w
            .points()
            .iter()
            .map(|(x, y)| [strs(x.coords()), strs(y.coords())])
            .collect(),
        matrix: matrix_rows(w.map().matrix()),
        products_checked: w.products_checked(),
    }
}

/// Parsing re-verifies the witness; a document that fails verification is
/// reported as a parse error.
pub fn witness_from_doc(alg: &AlgebraRef, doc: &WitnessDoc) -> Result<AutWitness> {
    check_algebra_id(alg, &doc.algebra)?;
    let m = LinMap::new(alg, parse_matrix(alg.field(), &doc.matrix, DIM, "matrix")?)?;
    let points = doc
        .claim
        .iter()
        .enumerate()
        .map(|(i, [x, y])| {
            Ok((
                parse_element(alg, x, &format!("claim[{i}][0]"))?,
                parse_element(alg, y, &format!("claim[{i}][1]"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    AutWitness::verified(m, points).map_err(|e| Error::parse("witness", e.to_string()))
}

pub fn witness_to_text(w: &AutWitness) -> String {
    json(&witness_doc(w))
}

pub fn witness_from_text(alg: &AlgebraRef, text: &str) -> Result<AutWitness> {
    witness_from_doc(alg, &from_json(text, "witness document")?)
}

pub fn rejection_doc(r: &Rejection) -> RejectionDoc {
    RejectionDoc {
        x: strs(r.x.coords()),
        y: strs(r.y.coords()),
        left: strs(r.left.coords()),
        right: strs(r.right.coords()),
        product: strs(r.product.coords()),
        image_of_product: strs(r.image_of_product.coords()),
        product_of_images: strs(r.product_of_images.coords()),
    }
}

pub fn rejection_from_doc(alg: &AlgebraRef, d: &RejectionDoc) -> Result<Rejection> {
    Ok(Rejection {
        x: parse_element(alg, &d.x, "x")?,
        y: parse_element(alg, &d.y, "y")?,
        left: parse_element(alg, &d.left, "left")?,
        right: parse_element(alg, &d.right, "right")?,
        product: parse_element(alg, &d.product, "product")?,
        image_of_product: parse_element(alg, &d.image_of_product, "image_of_product")?,
        product_of_images: parse_element(alg, &d.product_of_images, "product_of_images")?,
    })
}

pub fn verdict_doc(v: &TwoLocalVerdict) -> VerdictDoc {
    match v {
        TwoLocalVerdict::Automorphism {
            certificate,
            normal_form,
        } => VerdictDoc {
            verdict: "automorphism".into(),
            lambda: Some(normal_form.lambda.to_string()),
            certificate: Some(witness_doc(certificate)),
            rejection: None,
            explanation: None,
            transcript: Vec::new(),
        },
        TwoLocalVerdict::Rejected {
            rejection,
            explanation,
            normal_form,
        } => VerdictDoc {
            verdict: "rejected".into(),
            lambda: normal_form.as_ref().map(|n| n.lambda.to_string()),
            certificate: None,
            rejection: Some(rejection_doc(rejection)),
            explanation: Some(explanation.clone()),
            transcript: rejection.transcript(),
        },
    }
}

pub fn verdict_to_text(v: &TwoLocalVerdict) -> String {
    json(&verdict_doc(v))
}

pub fn partial_isometry_doc(p: &PartialIsometry) -> PartialIsometryDoc {
    PartialIsometryDoc {
        algebra: p.algebra().id().to_string(),
        domain: p
            .domain()
            .basis()
            .iter()
            .map(|v| strs(v.coords()))
            .collect(),
        images: p.images().iter().map(|v| strs(v.coords())).collect(),
    }
}

pub fn partial_isometry_from_doc(
    alg: &AlgebraRef,
    d: &PartialIsometryDoc,
) -> Result<PartialIsometry> {
    check_algebra_id(alg, &d.algebra)?;
    let parse_all = |vs: &[Vec<String>], ctx: &str| {
        vs.iter()
            .enumerate()
            .map(|(i, v)| parse_element(alg, v, &format!("{ctx}[{i}]")))
            .collect::<Result<Vec<_>>>()
    };
    let domain = parse_all(&d.domain, "domain")?;
    let images = parse_all(&d.images, "images")?;
    if domain.is_empty() {
        return Ok(PartialIsometry::empty(alg));
    }
    PartialIsometry::new(&domain, &images)
}

pub fn partial_isometry_to_text(p: &PartialIsometry) -> String {
    json(&partial_isometry_doc(p))
}

pub fn partial_isometry_from_text(alg: &AlgebraRef, text: &str) -> Result<PartialIsometry> {
    partial_isometry_from_doc(alg, &from_json(text, "partial isometry document")?)
}

pub fn symp_decomp_doc(d: &SympDecomp, ctx: &Char2Context) -> SympDecompDoc {
    SympDecompDoc {
        algebra: ctx.algebra().id().to_string(),
        w_basis: ctx.w_basis().iter().map(|w| strs(w.coords())).collect(),
        sigma: matrix_rows(&d.sigma),
        w_sigma: strs(&d.w_sigma),
    }
}

/// The recorded `W` basis must be the context's. The decomposition is
/// rebuilt without the consistency check so formal values round-trip.
pub fn symp_decomp_from_doc(ctx: &Char2Context, d: &SympDecompDoc) -> Result<SympDecomp> {
    let alg = ctx.algebra();
    check_algebra_id(alg, &d.algebra)?;
    let recorded = d
        .w_basis
        .iter()
        .enumerate()
        .map(|(i, v)| parse_element(alg, v, &format!("w_basis[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if recorded != ctx.w_basis() {
        return Err(Error::parse("w_basis", "does not match the context"));
    }
    let f = alg.field();
    let sigma = parse_matrix(f, &d.sigma, W_DIM, "sigma")?;
    let w_sigma = elems(f, &d.w_sigma, W_DIM, "w_sigma")?;
    SympDecomp::formal(ctx, sigma, w_sigma)
}

pub fn symp_decomp_to_text(d: &SympDecomp, ctx: &Char2Context) -> String {
    json(&symp_decomp_doc(d, ctx))
}

pub fn symp_decomp_from_text(ctx: &Char2Context, text: &str) -> Result<SympDecomp> {
    symp_decomp_from_doc(ctx, &from_json(text, "symplectic decomposition document")?)
}
