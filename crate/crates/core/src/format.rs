//! The JSON family file: one schema for difference families, difference
//! matrices and designs.
//!
//! ```json
//! {
//!   "role": "rdf",
//!   "carrier": {"group": [5], "field": {"p": 5, "n": 2, "modulus": [2, 1, 1]}},
//!   "k": 5,
//!   "lambda": 1,
//!   "forbidden": [[{"g": [0], "f": [0, 0]}, {"g": [1], "f": [0, 0]}, ...]],
//!   "blocks": [[{"g": [0], "f": [0, 0]}, ...], ...]
//! }
//! ```
//!
//! Group elements are residue tuples, product elements `{"g":[..],"f":[..]}`
//! with ascending field coefficients, and points of a bare design
//! (`"carrier": {"points": v}`) plain integers. For `"dm"` the blocks are the
//! matrix columns and `lambda` is `mu`. A design may carry a `multiplicity`
//! array parallel to `blocks`. Syntax errors carry the serde position;
//! semantic errors are located by walking the text to the offending value.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::algebra::{AbelianGroup, Subgroup};
use crate::carrier::Carrier;
use crate::designs::Design;
use crate::error::{Error, Result};
use crate::families::{
    DifferenceMatrix, KSet, PartialSpread, RelativeDifferenceFamily, StrongDifferenceFamily,
};
use crate::gf::{FieldElement, FiniteField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Sdf,
    Rdf,
    Dm,
    Design,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Sdf => "sdf",
            Role::Rdf => "rdf",
            Role::Dm => "dm",
            Role::Design => "design",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        match s {
            "sdf" => Some(Role::Sdf),
            "rdf" | "df" => Some(Role::Rdf),
            "dm" => Some(Role::Dm),
            "design" => Some(Role::Design),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CarrierSpec {
    Group(Vec<u64>),
    Product {
        group: Vec<u64>,
        p: u64,
        n: u32,
        modulus: Vec<u64>,
    },
    Points(usize),
}

impl CarrierSpec {
    pub fn of(carrier: &Carrier) -> Self {
        match carrier {
            Carrier::Group(g) => CarrierSpec::Group(g.cyclic_orders().to_vec()),
            Carrier::Product { base, field, .. } => CarrierSpec::Product {
                group: base.cyclic_orders().to_vec(),
                p: field.characteristic(),
                n: field.degree(),
                modulus: field.modulus().to_vec(),
            },
        }
    }

    /// The group carrier, `None` for bare points.
    pub fn build(&self) -> Result<Option<Carrier>> {
        Ok(match self {
            CarrierSpec::Group(f) => Some(Carrier::Group(AbelianGroup::new(f)?)),
            CarrierSpec::Product {
                group,
                p,
                n,
                modulus,
            } => {
                let field = FiniteField::new(*p, *n, Some(modulus))?;
                Some(Carrier::product(
                    AbelianGroup::new(group)?,
                    Arc::new(field),
                )?)
            }
            CarrierSpec::Points(_) => None,
        })
    }

    pub fn order(&self) -> Result<usize> {
        Ok(match self.build()? {
            Some(c) => c.order(),
            None => match self {
                CarrierSpec::Points(v) => *v,
                _ => unreachable!(),
            },
        })
    }
}

/// Parsed contents of a family file. Elements are carrier indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFile {
    pub role: Role,
    pub carrier: CarrierSpec,
    pub k: usize,
    pub lambda: usize,
    /// Element lists of the forbidden subgroups (each generates its member).
    pub forbidden: Vec<Vec<usize>>,
    pub blocks: Vec<Vec<usize>>,
    pub multiplicity: Option<Vec<usize>>,
}

impl FamilyFile {
    pub fn from_sdf(sdf: &StrongDifferenceFamily) -> Self {
        FamilyFile {
            role: Role::Sdf,
            carrier: CarrierSpec::of(sdf.carrier()),
            k: sdf.k(),
            lambda: sdf.lambda(),
            forbidden: Vec::new(),
            blocks: sdf.blocks().to_vec(),
            multiplicity: None,
        }
    }

    pub fn from_rdf(rdf: &RelativeDifferenceFamily) -> Self {
        FamilyFile {
            role: Role::Rdf,
            carrier: CarrierSpec::of(rdf.carrier()),
            k: rdf.k(),
            lambda: rdf.lambda(),
            forbidden: rdf
                .forbidden()
                .members()
                .iter()
                .map(|h| h.elements().to_vec())
                .collect(),
            blocks: rdf.raw_blocks(),
            multiplicity: None,
        }
    }

    pub fn from_dm(dm: &DifferenceMatrix) -> Self {
        FamilyFile {
            role: Role::Dm,
            carrier: CarrierSpec::Group(dm.group().cyclic_orders().to_vec()),
            k: dm.k(),
            lambda: dm.mu(),
            forbidden: Vec::new(),
            blocks: dm.columns().to_vec(),
            multiplicity: None,
        }
    }

    /// Distinct blocks with a multiplicity column when the design repeats blocks.
    pub fn from_design(design: &Design) -> Self {
        let carrier = match design.group() {
            Some(g) => CarrierSpec::Group(g.cyclic_orders().to_vec()),
            None => CarrierSpec::Points(design.v()),
        };
        let distinct = design.block_multiplicities();
        let simple = distinct.iter().all(|(_, n)| *n == 1);
        let (blocks, mult): (Vec<Vec<usize>>, Vec<usize>) = distinct
            .into_iter()
            .map(|(b, n)| (b.into_iter().map(|x| x as usize).collect(), n))
            .unzip();
        FamilyFile {
            role: Role::Design,
            carrier,
            k: design.k(),
            lambda: design.lambda(),
            forbidden: Vec::new(),
            blocks,
            multiplicity: (!simple).then_some(mult),
        }
    }

    fn require(&self, role: Role) -> Result<()> {
        if self.role != role {
            return Err(Error::InvalidArgument(format!(
                "file has role {}, expected {}",
                self.role.as_str(),
                role.as_str()
            )));
        }
        Ok(())
    }

    fn group_carrier(&self) -> Result<Carrier> {
        self.carrier.build()?.ok_or_else(|| {
            Error::CarrierMismatch("this role needs a group carrier, not bare points".into())
        })
    }

    pub fn to_sdf(&self) -> Result<StrongDifferenceFamily> {
        self.require(Role::Sdf)?;
        StrongDifferenceFamily::new(
            self.group_carrier()?,
            self.k,
            self.lambda,
            self.blocks.clone(),
        )
    }

    pub fn spread(&self, carrier: &Carrier) -> Result<PartialSpread> {
        let members = self
            .forbidden
            .iter()
            .map(|gens| Subgroup::generated(carrier.flat(), gens))
            .collect::<Result<Vec<_>>>()?;
        PartialSpread::new(carrier.flat(), members)
    }

    pub fn to_rdf(&self) -> Result<RelativeDifferenceFamily> {
        self.require(Role::Rdf)?;
        let carrier = self.group_carrier()?;
        let spread = self.spread(&carrier)?;
        let blocks = self
            .blocks
            .iter()
            .cloned()
            .map(KSet::new)
            .collect::<Result<Vec<_>>>()?;
        RelativeDifferenceFamily::new(carrier, spread, self.k, self.lambda, blocks)
    }

    pub fn to_dm(&self) -> Result<DifferenceMatrix> {
        self.require(Role::Dm)?;
        let carrier = self.group_carrier()?;
        DifferenceMatrix::new(carrier.flat(), self.k, self.lambda, self.blocks.clone())
    }

    pub fn to_design(&self) -> Result<Design> {
        self.require(Role::Design)?;
        let (v, group) = match self.carrier.build()? {
            Some(c) => (c.order(), Some(c.flat().clone())),
            None => (self.carrier.order()?, None),
        };
        let mut blocks = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let n = self.multiplicity.as_ref().map_or(1, |m| m[i]);
            for _ in 0..n {
                blocks.push(b.iter().map(|&x| x as u32).collect());
            }
        }
        Design::new(v, self.k, self.lambda, blocks, group)
    }

    /// JSON text, one block per line.
    pub fn render(&self) -> Result<String> {
        let carrier = self.carrier.build()?;
        let elem = |x: usize| -> Value { render_element(carrier.as_ref(), x) };
        let list = |b: &[usize]| -> String {
            Value::Array(b.iter().map(|&x| elem(x)).collect()).to_string()
        };
        let carrier_json = match &self.carrier {
            CarrierSpec::Group(f) => json!({ "group": f }),
            CarrierSpec::Product {
                group,
                p,
                n,
                modulus,
            } => {
                json!({ "group": group, "field": { "p": p, "n": n, "modulus": modulus } })
            }
            CarrierSpec::Points(v) => json!({ "points": v }),
        };
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"role\": \"{}\",", self.role.as_str());
        let _ = writeln!(out, "  \"carrier\": {carrier_json},");
        let _ = writeln!(out, "  \"k\": {},", self.k);
        let _ = writeln!(out, "  \"lambda\": {},", self.lambda);
        if !self.forbidden.is_empty() {
            out.push_str("  \"forbidden\": [\n");
            push_lines(&mut out, self.forbidden.iter().map(|h| list(h)));
            out.push_str("  ],\n");
        }
        if let Some(m) = &self.multiplicity {
            let _ = writeln!(out, "  \"multiplicity\": {},", Value::from(m.clone()));
        }
        out.push_str("  \"blocks\": [\n");
        push_lines(&mut out, self.blocks.iter().map(|b| list(b)));
        out.push_str("  ]\n}\n");
        Ok(out)
    }
}

fn push_lines(out: &mut String, lines: impl Iterator<Item = String>) {
    let lines: Vec<String> = lines.collect();
    for (i, l) in lines.iter().enumerate() {
        out.push_str("    ");
        out.push_str(l);
        if i + 1 < lines.len() {
            out.push(',');
        }
        out.push('\n');
    }
}

fn render_element(carrier: Option<&Carrier>, x: usize) -> Value {
    match carrier {
        None => Value::from(x),
        Some(Carrier::Group(g)) => Value::from(g.coords(x)),
        Some(c @ Carrier::Product { base, field, .. }) => {
            let (g, f) = c.split(x);
            json!({ "g": base.coords(g), "f": field.coeffs(f) })
        }
    }
}

#[derive(Clone, Debug)]
enum Seg {
    Key(&'static str),
    Index(usize),
}

fn path_string(path: &[Seg]) -> String {
    let mut s = String::from("$");
    for seg in path {
        match seg {
            Seg::Key(k) => {
                let _ = write!(s, ".{k}");
            }
            Seg::Index(i) => {
                let _ = write!(s, "[{i}]");
            }
        }
    }
    s
}

/// Locates the value at `path` in syntactically valid JSON text.
fn locate(text: &str, path: &[Seg]) -> (usize, usize) {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    'outer: for seg in path {
        match seg {
            Seg::Key(key) => {
                if bytes.get(pos) != Some(&b'{') {
                    break;
                }
                pos = skip_ws(bytes, pos + 1);
                while bytes.get(pos) == Some(&b'"') {
                    let end = skip_string(bytes, pos);
                    let name = &text[pos + 1..end - 1];
                    pos = skip_ws(bytes, end);
                    pos = skip_ws(bytes, pos + 1);
                    if name == *key {
                        continue 'outer;
                    }
                    pos = skip_ws(bytes, skip_value(bytes, pos));
                    if bytes.get(pos) == Some(&b',') {
                        pos = skip_ws(bytes, pos + 1);
                    }
                }
                break;
            }
            Seg::Index(i) => {
                if bytes.get(pos) != Some(&b'[') {
                    break;
                }
                pos = skip_ws(bytes, pos + 1);
                for _ in 0..*i {
                    pos = skip_ws(bytes, skip_value(bytes, pos));
                    if bytes.get(pos) == Some(&b',') {
                        pos = skip_ws(bytes, pos + 1);
                    }
                }
            }
        }
    }
    let pos = pos.min(text.len());
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(pos, |nl| pos - nl - 1) + 1;
    (line, column)
}

fn skip_ws(b: &[u8], mut pos: usize) -> usize {
    while pos < b.len() && b[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

/// Position just after the string starting at `pos`.
fn skip_string(b: &[u8], mut pos: usize) -> usize {
    pos += 1;
    while pos < b.len() {
        match b[pos] {
            b'\\' => pos += 2,
            b'"' => return pos + 1,
            _ => pos += 1,
        }
    }
    pos
}

/// Position just after the value starting at `pos`.
fn skip_value(b: &[u8], mut pos: usize) -> usize {
    let mut depth = 0usize;
    while pos < b.len() {
        match b[pos] {
            b'"' => {
                pos = skip_string(b, pos);
                if depth == 0 {
                    return pos;
                }
                continue;
            }
            b'[' | b'{' => depth += 1,
            b']' | b'}' => {
                if depth == 0 {
                    return pos;
                }
                depth -= 1;
                if depth == 0 {
                    return pos + 1;
                }
            }
            b',' if depth == 0 => return pos,
            _ => {}
        }
        pos += 1;
    }
    pos
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, path: &[Seg], message: impl std::fmt::Display) -> Error {
        let (line, column) = locate(self.text, path);
        Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path_string(path)),
        }
    }

    fn field<'v>(
        &self,
        obj: &'v Map<String, Value>,
        path: &[Seg],
        key: &'static str,
    ) -> Result<&'v Value> {
        obj.get(key)
            .ok_or_else(|| self.err(path, format!("missing key \"{key}\"")))
    }

    fn uint(&self, v: &Value, path: &[Seg]) -> Result<u64> {
        v.as_u64()
            .ok_or_else(|| self.err(path, "expected a non-negative integer"))
    }

    fn array<'v>(&self, v: &'v Value, path: &[Seg]) -> Result<&'v Vec<Value>> {
        v.as_array()
            .ok_or_else(|| self.err(path, "expected an array"))
    }

    fn uints(&self, v: &Value, path: &[Seg]) -> Result<Vec<u64>> {
        let arr = self.array(v, path)?;
        arr.iter()
            .enumerate()
            .map(|(i, x)| self.uint(x, &with(path, Seg::Index(i))))
            .collect()
    }

    fn residues(&self, group: &AbelianGroup, v: &Value, path: &[Seg]) -> Result<usize> {
        let coords = self.uints(v, path)?;
        if coords.len() != group.rank() {
            return Err(self.err(
                path,
                format!("expected {} residues, found {}", group.rank(), coords.len()),
            ));
        }
        for (i, (&c, &n)) in coords.iter().zip(group.cyclic_orders()).enumerate() {
            if c >= n {
                return Err(self.err(
                    &with(path, Seg::Index(i)),
                    format!("residue {c} out of range 0..{n}"),
                ));
            }
        }
        group.index_of(&coords).map_err(|e| self.err(path, e))
    }

    fn element(
        &self,
        carrier: Option<&Carrier>,
        points: usize,
        v: &Value,
        path: &[Seg],
    ) -> Result<usize> {
        match carrier {
            None => {
                let x = self.uint(v, path)? as usize;
                if x >= points {
                    return Err(self.err(path, format!("point {x} out of range 0..{points}")));
                }
                Ok(x)
            }
            Some(Carrier::Group(g)) => self.residues(g, v, path),
            Some(c @ Carrier::Product { base, field, .. }) => {
                let obj = v.as_object().ok_or_else(|| {
                    self.err(path, "expected an object {\"g\": [..], \"f\": [..]}")
                })?;
                let gp = with(path, Seg::Key("g"));
                let g = self.residues(base, self.field(obj, path, "g")?, &gp)?;
                let fp = with(path, Seg::Key("f"));
                let coeffs = self.uints(self.field(obj, path, "f")?, &fp)?;
                if coeffs.len() != field.degree() as usize {
                    return Err(self.err(
                        &fp,
                        format!(
                            "expected {} coefficients, found {}",
                            field.degree(),
                            coeffs.len()
                        ),
                    ));
                }
                if let Some(i) = coeffs.iter().position(|&c| c >= field.characteristic()) {
                    return Err(self.err(
                        &with(&fp, Seg::Index(i)),
                        format!("coefficient out of range 0..{}", field.characteristic()),
                    ));
                }
                let x: FieldElement = field.from_coeffs(&coeffs).map_err(|e| self.err(&fp, e))?;
                Ok(c.pair(g, x))
            }
        }
    }

    fn element_lists(
        &self,
        carrier: Option<&Carrier>,
        points: usize,
        v: &Value,
        path: &[Seg],
    ) -> Result<Vec<Vec<usize>>> {
        let outer = self.array(v, path)?;
        outer
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let bp = with(path, Seg::Index(i));
                self.array(b, &bp)?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| self.element(carrier, points, x, &with(&bp, Seg::Index(j))))
                    .collect()
            })
            .collect()
    }
}

fn with(path: &[Seg], seg: Seg) -> Vec<Seg> {
    let mut p = path.to_vec();
    p.push(seg);
    p
}

/// Parses and validates a family file (element ranges, block sizes,
/// multiplicity shape). Mathematical verification is left to the verifiers.
pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let ctx = Ctx { text };
    let top: &[Seg] = &[];
    let obj = root
        .as_object()
        .ok_or_else(|| ctx.err(top, "expected an object"))?;

    let role_v = ctx.field(obj, top, "role")?;
    let role = role_v.as_str().and_then(Role::parse).ok_or_else(|| {
        ctx.err(
            &[Seg::Key("role")],
            "expected one of \"sdf\", \"rdf\", \"dm\", \"design\"",
        )
    })?;

    let cp = [Seg::Key("carrier")];
    let cobj = ctx
        .field(obj, top, "carrier")?
        .as_object()
        .ok_or_else(|| ctx.err(&cp, "expected an object"))?;
    let carrier = if let Some(v) = cobj.get("points") {
        if role != Role::Design {
            return Err(ctx.err(&cp, "bare points are only allowed for designs"));
        }
        CarrierSpec::Points(ctx.uint(v, &with(&cp, Seg::Key("points")))? as usize)
    } else {
        let gp = with(&cp, Seg::Key("group"));
        let group = ctx.uints(ctx.field(cobj, &cp, "group")?, &gp)?;
        AbelianGroup::new(&group).map_err(|e| ctx.err(&gp, e))?;
        match cobj.get("field") {
            None => CarrierSpec::Group(group),
            Some(fv) => {
                let fp = with(&cp, Seg::Key("field"));
                let fobj = fv
                    .as_object()
                    .ok_or_else(|| ctx.err(&fp, "expected an object"))?;
                let p = ctx.uint(ctx.field(fobj, &fp, "p")?, &with(&fp, Seg::Key("p")))?;
                let n = ctx.uint(ctx.field(fobj, &fp, "n")?, &with(&fp, Seg::Key("n")))?;
                let n = u32::try_from(n)
                    .map_err(|_| ctx.err(&with(&fp, Seg::Key("n")), "degree too large"))?;
                let modulus = match fobj.get("modulus") {
                    Some(m) => Some(ctx.uints(m, &with(&fp, Seg::Key("modulus")))?),
                    None => None,
                };
                let field =
                    FiniteField::new(p, n, modulus.as_deref()).map_err(|e| ctx.err(&fp, e))?;
                CarrierSpec::Product {
                    group,
                    p,
                    n,
                    modulus: field.modulus().to_vec(),
                }
            }
        }
    };
    let built = carrier.build().map_err(|e| ctx.err(&cp, e))?;
    let points = match &carrier {
        CarrierSpec::Points(v) => *v,
        _ => built.as_ref().map_or(0, Carrier::order),
    };

    let k = ctx.uint(ctx.field(obj, top, "k")?, &[Seg::Key("k")])? as usize;
    let lambda = ctx.uint(ctx.field(obj, top, "lambda")?, &[Seg::Key("lambda")])? as usize;

    let forbidden = match obj.get("forbidden") {
        Some(v) => {
            if role != Role::Rdf {
                return Err(ctx.err(
                    &[Seg::Key("forbidden")],
                    "only relative families have forbidden subgroups",
                ));
            }
            ctx.element_lists(built.as_ref(), points, v, &[Seg::Key("forbidden")])?
        }
        None => Vec::new(),
    };
    if let Some(c) = &built {
        for (i, gens) in forbidden.iter().enumerate() {
            Subgroup::generated(c.flat(), gens)
                .map_err(|e| ctx.err(&[Seg::Key("forbidden"), Seg::Index(i)], e))?;
        }
    }

    let bp = [Seg::Key("blocks")];
    let blocks = ctx.element_lists(built.as_ref(), points, ctx.field(obj, top, "blocks")?, &bp)?;
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != k {
            let what = if role == Role::Dm { "column" } else { "block" };
            return Err(ctx.err(
                &[Seg::Key("blocks"), Seg::Index(i)],
                format!("{what} has {} entries, expected {k}", b.len()),
            ));
        }
    }

    let multiplicity = match obj.get("multiplicity") {
        Some(v) => {
            let mp = [Seg::Key("multiplicity")];
            if role != Role::Design {
                return Err(ctx.err(&mp, "only designs have a multiplicity column"));
            }
            let m: Vec<usize> = ctx.uints(v, &mp)?.into_iter().map(|x| x as usize).collect();
            if m.len() != blocks.len() {
                return Err(ctx.err(
                    &mp,
                    format!("{} multiplicities for {} blocks", m.len(), blocks.len()),
                ));
            }
            if let Some(i) = m.iter().position(|&x| x == 0) {
                return Err(ctx.err(&with(&mp, Seg::Index(i)), "multiplicity must be positive"));
            }
            Some(m)
        }
        None => None,
    };

    Ok(FamilyFile {
        role,
        carrier,
        k,
        lambda,
        forbidden,
        blocks,
        multiplicity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"{
  "role": "sdf",
  "carrier": {"group": [5]},
  "k": 5,
  "lambda": 4,
  "blocks": [[[0], [1], [1], [4], [4]]]
}"#;

    #[test]
    fn parses_and_round_trips() {
        let f = parse_family(EXAMPLE).unwrap();
        assert_eq!(f.blocks, vec![vec![0, 1, 1, 4, 4]]);
        assert!(f.to_sdf().unwrap().is_additive());
        assert_eq!(parse_family(&f.render().unwrap()).unwrap(), f);
    }

    #[test]
    fn out_of_range_residue_is_located() {
        let bad = EXAMPLE.replace("[4], [4]]", "[4], [7]]");
        match parse_family(&bad).unwrap_err() {
            Error::Parse {
                line,
                column,
                message,
            } => {
                assert_eq!(line, 6);
                assert_eq!(&bad.lines().nth(5).unwrap()[column - 1..column], "7");
                assert!(message.contains("$.blocks[0][4][0]"), "{message}");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let e = parse_family("{\n  \"role\": sdf\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn wrong_block_size_and_missing_key() {
        let bad = EXAMPLE.replace("\"k\": 5", "\"k\": 4");
        assert!(matches!(
            parse_family(&bad),
            Err(Error::Parse { line: 6, .. })
        ));
        let bad = EXAMPLE.replace("\"lambda\": 4,", "");
        assert!(parse_family(&bad).is_err());
    }

    #[test]
    fn design_multiplicity_round_trip() {
        let text = r#"{"role":"design","carrier":{"points":3},"k":2,"lambda":2,
            "multiplicity":[2,2,2],"blocks":[[0,1],[0,2],[1,2]]}"#;
        let f = parse_family(text).unwrap();
        let d = f.to_design().unwrap();
        assert_eq!(d.block_count(), 6);
        assert_eq!(FamilyFile::from_design(&d), f);
        assert_eq!(parse_family(&f.render().unwrap()).unwrap(), f);
    }

    #[test]
    fn product_elements() {
        let text = r#"{"role":"rdf","carrier":{"group":[1],"field":{"p":5,"n":1}},"k":2,"lambda":1,
            "blocks":[[{"g":[0],"f":[0]},{"g":[0],"f":[1]}],[{"g":[0],"f":[0]},{"g":[0],"f":[2]}]]}"#;
        let f = parse_family(text).unwrap();
        assert_eq!(f.blocks, vec![vec![0, 1], vec![0, 2]]);
        assert_eq!(parse_family(&f.render().unwrap()).unwrap(), f);
        let bad = text.replace("\"f\":[2]", "\"f\":[2,0]");
        assert!(parse_family(&bad).is_err());
    }
}
