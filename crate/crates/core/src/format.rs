//! The structure-file format: JSON with a fixed top-level layout, sorted
//! keys and one table row per line. See `docs/FORMAT.md` for the grammar.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::actions::ActionSet;
use crate::cat1::{Cat1Group, Cat1Morphism};
use crate::error::Error;
use crate::gpd::{GpdMorphism, InternalGroupoid};
use crate::gwo::GroupWithOps;
use crate::morphism::Morphism;
use crate::signature::OpSignature;
use crate::table::Table;
use crate::xmod::{CrossedModule, XModMorphism};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("range error at {path}: index {index} is not below {size}")]
    Range { path: String, index: u64, size: usize },
    #[error("shape error at {path}: {message}")]
    Shape { path: String, message: String },
    #[error("unsupported format_version {0}")]
    Version(u64),
    #[error(transparent)]
    Structure(#[from] Error),
}

type FResult<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Gwo,
    Morphism,
    Action,
    XMod,
    Gpd,
    Cat1,
    Subobject,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Gwo,
        Kind::Morphism,
        Kind::Action,
        Kind::XMod,
        Kind::Gpd,
        Kind::Cat1,
        Kind::Subobject,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Gwo => "gwo",
            Kind::Morphism => "morphism",
            Kind::Action => "action",
            Kind::XMod => "xmod",
            Kind::Gpd => "gpd",
            Kind::Cat1 => "cat1",
            Kind::Subobject => "subobject",
        }
    }

    pub fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Metadata {
    pub name: Option<String>,
    pub provenance: Option<String>,
    /// For quotients: the least element of the parent in each class.
    pub representatives: Option<Vec<usize>>,
}

impl Metadata {
    pub fn named(name: impl Into<String>) -> Self {
        Metadata {
            name: Some(name.into()),
            ..Default::default()
        }
    }
}

/// Element lists of a subobject. `base_elements` carries `T` for a
/// subcrossed module and `N₀` for a subgroupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubobjectSets {
    pub elements: Vec<usize>,
    pub base_elements: Option<Vec<usize>>,
}

/// A morphism in any of the four categories. For crossed modules `map` is
/// the top map and `base_map` the bottom one; for groupoids they are the
/// arrow and object maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyMorphism {
    Gwo(Morphism),
    XMod(XModMorphism),
    Gpd(GpdMorphism),
    Cat1(Cat1Morphism),
}

impl AnyMorphism {
    pub fn category(&self) -> Kind {
        match self {
            AnyMorphism::Gwo(_) => Kind::Gwo,
            AnyMorphism::XMod(_) => Kind::XMod,
            AnyMorphism::Gpd(_) => Kind::Gpd,
            AnyMorphism::Cat1(_) => Kind::Cat1,
        }
    }

    fn signature(&self) -> OpSignature {
        match self {
            AnyMorphism::Gwo(m) => m.dom().signature().clone(),
            AnyMorphism::XMod(m) => m.dom.actor().signature().clone(),
            AnyMorphism::Gpd(m) => m.dom.objects().signature().clone(),
            AnyMorphism::Cat1(m) => m.dom.group().signature().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Gwo(Arc<GroupWithOps>),
    Morphism(AnyMorphism),
    Action(ActionSet),
    XMod(Arc<CrossedModule>),
    Gpd(Arc<InternalGroupoid>),
    Cat1(Arc<Cat1Group>),
    Subobject(SubobjectSets),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Gwo(_) => Kind::Gwo,
            Structure::Morphism(_) => Kind::Morphism,
            Structure::Action(_) => Kind::Action,
            Structure::XMod(_) => Kind::XMod,
            Structure::Gpd(_) => Kind::Gpd,
            Structure::Cat1(_) => Kind::Cat1,
            Structure::Subobject(_) => Kind::Subobject,
        }
    }

    fn signature(&self) -> OpSignature {
        match self {
            Structure::Gwo(g) => g.signature().clone(),
            Structure::Morphism(m) => m.signature(),
            Structure::Action(a) => a.actor().signature().clone(),
            Structure::XMod(x) => x.actor().signature().clone(),
            Structure::Gpd(g) => g.objects().signature().clone(),
            Structure::Cat1(c) => c.group().signature().clone(),
            Structure::Subobject(_) => OpSignature::groups(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub structure: Structure,
    pub metadata: Metadata,
}

impl StructureFile {
    pub fn new(structure: Structure, metadata: Metadata) -> Self {
        StructureFile { structure, metadata }
    }
}

// ---------------------------------------------------------------- writing

fn nums(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x)).collect())
}

fn rows(t: &Table) -> Value {
    Value::Array(t.to_rows().iter().map(|r| nums(r)).collect())
}

fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn signature_value(sig: &OpSignature) -> Value {
    let opposite = (0..sig.binary_count()).map(|k| Value::from(sig.opposite_symbol(k))).collect();
    object(vec![
        ("binary", Value::Array(sig.binary().iter().map(|s| Value::from(s.as_str())).collect())),
        ("opposite", Value::Array(opposite)),
        ("unary", Value::Array(sig.unary().iter().map(|s| Value::from(s.as_str())).collect())),
    ])
}

fn gwo_value(g: &GroupWithOps) -> Value {
    let sig = g.signature();
    let ops = sig
        .binary()
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), rows(g.binary_table(k))))
        .collect::<Map<_, _>>();
    let unary = sig
        .unary()
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), nums(g.unary_table(k))))
        .collect::<Map<_, _>>();
    object(vec![
        ("add", rows(g.add_table())),
        ("neg", nums(g.neg_table())),
        ("ops", Value::Object(ops)),
        ("unary", Value::Object(unary)),
        ("zero", Value::from(g.zero())),
    ])
}

fn action_fields(a: &ActionSet) -> Vec<(&'static str, Value)> {
    let star = a
        .actor()
        .signature()
        .binary()
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), rows(a.star_table(k))))
        .collect::<Map<_, _>>();
    vec![
        ("acted", gwo_value(a.acted())),
        ("actor", gwo_value(a.actor())),
        ("dot", rows(a.dot_table())),
        ("star", Value::Object(star)),
    ]
}

fn xmod_value(x: &CrossedModule) -> Value {
    let mut f = action_fields(x.action());
    f.push(("boundary", nums(x.boundary().map())));
    object(f)
}

fn gpd_value(g: &InternalGroupoid) -> Value {
    object(vec![
        ("arrows", gwo_value(g.arrows())),
        ("identity", nums(g.identity_map().map())),
        ("objects", gwo_value(g.objects())),
        ("source", nums(g.source_map().map())),
        ("target", nums(g.target_map().map())),
    ])
}

fn cat1_value(c: &Cat1Group) -> Value {
    object(vec![
        ("group", gwo_value(c.group())),
        ("source", nums(c.source_map().map())),
        ("target", nums(c.target_map().map())),
    ])
}

fn morphism_value(m: &AnyMorphism) -> Value {
    let (dom, cod, map, base) = match m {
        AnyMorphism::Gwo(m) => (gwo_value(m.dom()), gwo_value(m.cod()), m.map(), None),
        AnyMorphism::XMod(m) => (xmod_value(&m.dom), xmod_value(&m.cod), m.f.map(), Some(m.g.map())),
        AnyMorphism::Gpd(m) => (gpd_value(&m.dom), gpd_value(&m.cod), m.arrows.map(), Some(m.objects.map())),
        AnyMorphism::Cat1(m) => (cat1_value(&m.dom), cat1_value(&m.cod), m.map.map(), None),
    };
    let mut f = vec![
        ("category", Value::from(m.category().name())),
        ("codomain", cod),
        ("domain", dom),
        ("map", nums(map)),
    ];
    if let Some(b) = base {
        f.push(("base_map", nums(b)));
    }
    object(f)
}

fn body_value(s: &Structure) -> Value {
    match s {
        Structure::Gwo(g) => gwo_value(g),
        Structure::Morphism(m) => morphism_value(m),
        Structure::Action(a) => object(action_fields(a)),
        Structure::XMod(x) => xmod_value(x),
        Structure::Gpd(g) => gpd_value(g),
        Structure::Cat1(c) => cat1_value(c),
        Structure::Subobject(s) => {
            let mut f = vec![("elements", nums(&s.elements))];
            if let Some(b) = &s.base_elements {
                f.push(("base_elements", nums(b)));
            }
            object(f)
        }
    }
}

fn metadata_value(m: &Metadata) -> Value {
    let mut f = Vec::new();
    if let Some(n) = &m.name {
        f.push(("name", Value::from(n.as_str())));
    }
    if let Some(p) = &m.provenance {
        f.push(("provenance", Value::from(p.as_str())));
    }
    if let Some(r) = &m.representatives {
        f.push(("representatives", nums(r)));
    }
    object(f)
}

pub fn to_value(file: &StructureFile) -> Value {
    object(vec![
        ("body", body_value(&file.structure)),
        ("format_version", Value::from(FORMAT_VERSION)),
        ("kind", Value::from(file.structure.kind().name())),
        ("metadata", metadata_value(&file.metadata)),
        ("signature", signature_value(&file.structure.signature())),
    ])
}

/// Canonical text: keys sorted, two-space indent, arrays of scalars on one line.
pub fn serialize(file: &StructureFile) -> String {
    let mut out = String::new();
    write_value(&mut out, &to_value(file), 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(depth + 1), Value::from(k.as_str()));
                write_value(out, &m[k.as_str()], depth + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(xs) => {
            out.push_str("[\n");
            for (i, x) in xs.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < xs.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

// ---------------------------------------------------------------- reading

fn shape(path: &str, message: impl Into<String>) -> FormatError {
    FormatError::Shape {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> FResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| shape(path, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> FResult<&'a Value> {
    m.get(key).ok_or_else(|| shape(path, format!("missing field {key:?}")))
}

fn only_fields(m: &Map<String, Value>, allowed: &[&str], path: &str) -> FResult<()> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(shape(path, format!("unknown field {k:?}"))),
        None => Ok(()),
    }
}

fn index(v: &Value, path: &str, size: usize) -> FResult<usize> {
    let x = v.as_u64().ok_or_else(|| shape(path, "expected a nonnegative integer"))?;
    if x >= size as u64 {
        return Err(FormatError::Range {
            path: path.to_string(),
            index: x,
            size,
        });
    }
    Ok(x as usize)
}

fn index_list(v: &Value, path: &str, len: Option<usize>, size: usize) -> FResult<Vec<usize>> {
    let xs = v.as_array().ok_or_else(|| shape(path, "expected an array"))?;
    if let Some(n) = len {
        if xs.len() != n {
            return Err(shape(path, format!("expected {n} entries, found {}", xs.len())));
        }
    }
    xs.iter().enumerate().map(|(i, x)| index(x, &format!("{path}[{i}]"), size)).collect()
}

fn table(v: &Value, path: &str, rows: usize, cols: usize, size: usize) -> FResult<Table> {
    let xs = v.as_array().ok_or_else(|| shape(path, "expected an array of rows"))?;
    if xs.len() != rows {
        return Err(shape(path, format!("expected {rows} rows, found {}", xs.len())));
    }
    let data = xs
        .iter()
        .enumerate()
        .map(|(i, r)| index_list(r, &format!("{path}[{i}]"), Some(cols), size))
        .collect::<FResult<Vec<_>>>()?;
    Ok(Table::from_rows(&data, rows, cols, size)?)
}

fn string_list(v: &Value, path: &str) -> FResult<Vec<String>> {
    let xs = v.as_array().ok_or_else(|| shape(path, "expected an array of strings"))?;
    xs.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| shape(&format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn read_signature(v: &Value, path: &str) -> FResult<OpSignature> {
    let m = as_object(v, path)?;
    only_fields(m, &["binary", "opposite", "unary"], path)?;
    let binary = string_list(field(m, "binary", path)?, &format!("{path}.binary"))?;
    let unary = string_list(field(m, "unary", path)?, &format!("{path}.unary"))?;
    let opp_path = format!("{path}.opposite");
    let opposite_names = string_list(field(m, "opposite", path)?, &opp_path)?;
    if opposite_names.len() != binary.len() {
        return Err(shape(&opp_path, "one opposite per binary symbol"));
    }
    let opposite = opposite_names
        .iter()
        .enumerate()
        .map(|(i, s)| {
            binary
                .iter()
                .position(|b| b == s)
                .ok_or_else(|| shape(&format!("{opp_path}[{i}]"), format!("unknown symbol {s:?}")))
        })
        .collect::<FResult<Vec<_>>>()?;
    Ok(OpSignature::from_parts(binary, unary, opposite)?)
}

fn read_gwo(v: &Value, path: &str, sig: &OpSignature) -> FResult<Arc<GroupWithOps>> {
    let m = as_object(v, path)?;
    only_fields(m, &["add", "neg", "ops", "unary", "zero"], path)?;
    let add_v = field(m, "add", path)?;
    let n = add_v
        .as_array()
        .ok_or_else(|| shape(&format!("{path}.add"), "expected an array of rows"))?
        .len();
    if n == 0 {
        return Err(shape(&format!("{path}.add"), "carrier must be nonempty"));
    }
    let add = table(add_v, &format!("{path}.add"), n, n, n)?;
    let neg = index_list(field(m, "neg", path)?, &format!("{path}.neg"), Some(n), n)?;
    let zero = index(field(m, "zero", path)?, &format!("{path}.zero"), n)?;
    let ops_path = format!("{path}.ops");
    let ops = as_object(field(m, "ops", path)?, &ops_path)?;
    if ops.len() != sig.binary_count() {
        return Err(shape(&ops_path, "one table per binary symbol of the signature"));
    }
    let binary = sig
        .binary()
        .iter()
        .map(|s| {
            let p = format!("{ops_path}.{s}");
            table(field(ops, s, &ops_path)?, &p, n, n, n)
        })
        .collect::<FResult<Vec<_>>>()?;
    let un_path = format!("{path}.unary");
    let un = as_object(field(m, "unary", path)?, &un_path)?;
    if un.len() != sig.unary_count() {
        return Err(shape(&un_path, "one table per unary symbol of the signature"));
    }
    let unary = sig
        .unary()
        .iter()
        .map(|s| index_list(field(un, s, &un_path)?, &format!("{un_path}.{s}"), Some(n), n))
        .collect::<FResult<Vec<_>>>()?;
    Ok(Arc::new(GroupWithOps::from_tables(sig.clone(), zero, add, neg, binary, unary)?))
}

fn map_between(m: &Map<String, Value>, key: &str, path: &str, dom: &Arc<GroupWithOps>, cod: &Arc<GroupWithOps>) -> FResult<Morphism> {
    let map = index_list(field(m, key, path)?, &format!("{path}.{key}"), Some(dom.order()), cod.order())?;
    Ok(Morphism::new(dom.clone(), cod.clone(), map)?)
}

fn read_action(m: &Map<String, Value>, path: &str, sig: &OpSignature) -> FResult<ActionSet> {
    let actor = read_gwo(field(m, "actor", path)?, &format!("{path}.actor"), sig)?;
    let acted = read_gwo(field(m, "acted", path)?, &format!("{path}.acted"), sig)?;
    let (nb, na) = (actor.order(), acted.order());
    let dot = table(field(m, "dot", path)?, &format!("{path}.dot"), nb, na, na)?;
    let star_path = format!("{path}.star");
    let star_m = as_object(field(m, "star", path)?, &star_path)?;
    if star_m.len() != sig.binary_count() {
        return Err(shape(&star_path, "one table per binary symbol of the signature"));
    }
    let star = sig
        .binary()
        .iter()
        .map(|s| table(field(star_m, s, &star_path)?, &format!("{star_path}.{s}"), nb, na, na))
        .collect::<FResult<Vec<_>>>()?;
    Ok(ActionSet::new(actor, acted, dot, star)?)
}

fn read_xmod(v: &Value, path: &str, sig: &OpSignature) -> FResult<Arc<CrossedModule>> {
    let m = as_object(v, path)?;
    only_fields(m, &["acted", "actor", "boundary", "dot", "star"], path)?;
    let action = read_action(m, path, sig)?;
    let boundary = map_between(m, "boundary", path, action.acted(), action.actor())?;
    Ok(Arc::new(CrossedModule::new(action, boundary)?))
}

fn read_gpd(v: &Value, path: &str, sig: &OpSignature) -> FResult<Arc<InternalGroupoid>> {
    let m = as_object(v, path)?;
    only_fields(m, &["arrows", "identity", "objects", "source", "target"], path)?;
    let g1 = read_gwo(field(m, "arrows", path)?, &format!("{path}.arrows"), sig)?;
    let g0 = read_gwo(field(m, "objects", path)?, &format!("{path}.objects"), sig)?;
    let d0 = map_between(m, "source", path, &g1, &g0)?;
    let d1 = map_between(m, "target", path, &g1, &g0)?;
    let eps = map_between(m, "identity", path, &g0, &g1)?;
    Ok(Arc::new(InternalGroupoid::new(d0, d1, eps)?))
}

fn read_cat1(v: &Value, path: &str, sig: &OpSignature) -> FResult<Arc<Cat1Group>> {
    let m = as_object(v, path)?;
    only_fields(m, &["group", "source", "target"], path)?;
    let g = read_gwo(field(m, "group", path)?, &format!("{path}.group"), sig)?;
    let s = map_between(m, "source", path, &g, &g)?;
    let t = map_between(m, "target", path, &g, &g)?;
    Ok(Arc::new(Cat1Group::new(s, t)?))
}

fn read_morphism(v: &Value, path: &str, sig: &OpSignature) -> FResult<AnyMorphism> {
    let m = as_object(v, path)?;
    only_fields(m, &["base_map", "category", "codomain", "domain", "map"], path)?;
    let cat_name = match m.get("category") {
        None => "gwo",
        Some(c) => c.as_str().ok_or_else(|| shape(&format!("{path}.category"), "expected a string"))?,
    };
    let (dp, cp) = (format!("{path}.domain"), format!("{path}.codomain"));
    let (dv, cv) = (field(m, "domain", path)?, field(m, "codomain", path)?);
    let base = |dom: &Arc<GroupWithOps>, cod: &Arc<GroupWithOps>| map_between(m, "base_map", path, dom, cod);
    let no_base = || match m.get("base_map") {
        Some(_) => Err(shape(path, format!("category {cat_name} takes no base_map"))),
        None => Ok(()),
    };
    Ok(match Kind::from_name(cat_name) {
        Some(Kind::Gwo) => {
            no_base()?;
            let (d, c) = (read_gwo(dv, &dp, sig)?, read_gwo(cv, &cp, sig)?);
            AnyMorphism::Gwo(map_between(m, "map", path, &d, &c)?)
        }
        Some(Kind::XMod) => {
            let (d, c) = (read_xmod(dv, &dp, sig)?, read_xmod(cv, &cp, sig)?);
            let f = map_between(m, "map", path, d.acted(), c.acted())?;
            let g = base(d.actor(), c.actor())?;
            AnyMorphism::XMod(XModMorphism::new(d, c, f, g)?)
        }
        Some(Kind::Gpd) => {
            let (d, c) = (read_gpd(dv, &dp, sig)?, read_gpd(cv, &cp, sig)?);
            let arrows = map_between(m, "map", path, d.arrows(), c.arrows())?;
            let objects = base(d.objects(), c.objects())?;
            AnyMorphism::Gpd(GpdMorphism::new(d, c, arrows, objects)?)
        }
        Some(Kind::Cat1) => {
            no_base()?;
            let (d, c) = (read_cat1(dv, &dp, sig)?, read_cat1(cv, &cp, sig)?);
            let map = map_between(m, "map", path, d.group(), c.group())?;
            AnyMorphism::Cat1(Cat1Morphism::new(d, c, map)?)
        }
        _ => return Err(shape(&format!("{path}.category"), format!("no morphisms of kind {cat_name:?}"))),
    })
}

fn read_metadata(v: Option<&Value>) -> FResult<Metadata> {
    let Some(v) = v else {
        return Ok(Metadata::default());
    };
    let path = "metadata";
    let m = as_object(v, path)?;
    only_fields(m, &["name", "provenance", "representatives"], path)?;
    let text = |key: &str| -> FResult<Option<String>> {
        m.get(key)
            .map(|x| {
                x.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| shape(&format!("{path}.{key}"), "expected a string"))
            })
            .transpose()
    };
    let representatives = m
        .get("representatives")
        .map(|x| index_list(x, "metadata.representatives", None, usize::MAX))
        .transpose()?;
    Ok(Metadata {
        name: text("name")?,
        provenance: text("provenance")?,
        representatives,
    })
}

/// Parses and structurally checks a structure file. Axioms are not checked.
pub fn parse(text: &str) -> FResult<StructureFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let top = as_object(&root, "$")?;
    only_fields(top, &["body", "format_version", "kind", "metadata", "signature"], "$")?;
    let version = field(top, "format_version", "$")?
        .as_u64()
        .ok_or_else(|| shape("format_version", "expected an integer"))?;
    if version != FORMAT_VERSION {
        return Err(FormatError::Version(version));
    }
    let kind_name = field(top, "kind", "$")?
        .as_str()
        .ok_or_else(|| shape("kind", "expected a string"))?;
    let kind = Kind::from_name(kind_name).ok_or_else(|| shape("kind", format!("unknown kind {kind_name:?}")))?;
    let sig = read_signature(field(top, "signature", "$")?, "signature")?;
    let metadata = read_metadata(top.get("metadata"))?;
    let path = "body";
    let body = field(top, "body", "$")?;
    let structure = match kind {
        Kind::Gwo => Structure::Gwo(read_gwo(body, path, &sig)?),
        Kind::Morphism => Structure::Morphism(read_morphism(body, path, &sig)?),
        Kind::Action => {
            let m = as_object(body, path)?;
            only_fields(m, &["acted", "actor", "dot", "star"], path)?;
            Structure::Action(read_action(m, path, &sig)?)
        }
        Kind::XMod => Structure::XMod(read_xmod(body, path, &sig)?),
        Kind::Gpd => Structure::Gpd(read_gpd(body, path, &sig)?),
        Kind::Cat1 => Structure::Cat1(read_cat1(body, path, &sig)?),
        Kind::Subobject => {
            let body = as_object(body, path)?;
            only_fields(body, &["base_elements", "elements"], path)?;
            let elements = index_list(field(body, "elements", path)?, "body.elements", None, usize::MAX)?;
            let base_elements = body
                .get("base_elements")
                .map(|v| index_list(v, "body.base_elements", None, usize::MAX))
                .transpose()?;
            Structure::Subobject(SubobjectSets { elements, base_elements })
        }
    };
    Ok(StructureFile { structure, metadata })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{cyclic_ring, symmetric_group_3};

    fn z4_file() -> StructureFile {
        StructureFile::new(Structure::Gwo(Arc::new(cyclic_ring(4))), Metadata::named("Z4"))
    }

    #[test]
    fn z4_roundtrip() {
        let text = serialize(&z4_file());
        let back = parse(&text).unwrap();
        assert_eq!(back, z4_file());
        assert_eq!(serialize(&back), text);
        match back.structure {
            Structure::Gwo(g) => assert_eq!(g.order(), 4),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn rows_are_compact_and_keys_sorted() {
        let text = serialize(&z4_file());
        assert!(text.contains("[0, 1, 2, 3]"));
        let body = text.find("\"body\"").unwrap();
        let kind = text.find("\"kind\"").unwrap();
        assert!(body < kind);
    }

    #[test]
    fn empty_file_is_a_syntax_error() {
        assert!(matches!(parse(""), Err(FormatError::Syntax { .. })));
        match parse("{\n  \"kind\": ,\n}") {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_reported_with_path() {
        let text = serialize(&z4_file()).replacen("[0, 1, 2, 3]", "[0, 1, 7, 3]", 1);
        match parse(&text) {
            Err(FormatError::Range { index, size, path }) => {
                assert_eq!((index, size), (7, 4));
                assert_eq!(path, "body.add[0][2]");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plain_group_has_empty_blocks() {
        let f = StructureFile::new(Structure::Gwo(Arc::new(symmetric_group_3())), Metadata::default());
        let text = serialize(&f);
        assert!(text.contains("\"ops\": {}"));
        assert_eq!(parse(&text).unwrap(), f);
    }
}
