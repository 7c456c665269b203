//! JSON files for modules, algebras and intertwining operators.
//!
//! An operator file names its algebra and the three modules by relative
//! path; `"@algebra"` stands for the algebra's own adjoint module, so that
//! identity of modules survives a round trip.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{BasisVector, GeneralizedModule, GradeGroup, GradedSpace, LinearMap, VertexAlgebra};
use crate::intertwining::{IntertwiningType, LogIntwOp};
use crate::scalar::{ExactComplex, Q};

pub const MODULE_SCHEMA: &str = "logtensor-module/1";
pub const ALGEBRA_SCHEMA: &str = "logtensor-algebra/1";
pub const OPERATOR_SCHEMA: &str = "logtensor-operator/1";
pub const ALGEBRA_MODULE: &str = "@algebra";

type Entries = Vec<(usize, usize, ExactComplex)>;

#[derive(Serialize, Deserialize)]
struct ModeFile {
    v: usize,
    m: i64,
    entries: Entries,
}

#[derive(Serialize, Deserialize)]
pub struct ModuleFile {
    schema: String,
    label: String,
    moduli: Vec<Option<i64>>,
    basis: Vec<BasisVector>,
    modes: Vec<ModeFile>,
    l_minus: Entries,
    l_nil: Entries,
    l_plus: Entries,
    cutoff: Q,
}

#[derive(Serialize, Deserialize)]
pub struct AlgebraFile {
    schema: String,
    name: String,
    vacuum: usize,
    mode_vectors: Vec<usize>,
    conformal: Option<Vec<(usize, ExactComplex)>>,
    module: ModuleFile,
}

#[derive(Serialize, Deserialize)]
struct TypeFile {
    w3: String,
    w1: String,
    w2: String,
}

#[derive(Serialize, Deserialize)]
struct CoefficientFile {
    /// `[num, den, inum, iden]`
    n: [i64; 4],
    k: u32,
    matrix: Vec<(usize, usize, usize, ExactComplex)>,
}

#[derive(Serialize, Deserialize)]
struct OperatorFile {
    schema: String,
    algebra: String,
    #[serde(rename = "type")]
    ty: TypeFile,
    coefficients: Vec<CoefficientFile>,
}

fn entries(m: &LinearMap) -> Entries {
    m.entries().map(|(r, c, v)| (r, c, v.clone())).collect()
}

fn linear(e: &Entries) -> LinearMap {
    let mut m = LinearMap::new();
    for (r, c, v) in e {
        m.insert(*r, *c, v.clone());
    }
    m
}

fn check_schema(found: &str, want: &str) -> Result<()> {
    if found == want {
        Ok(())
    } else {
        Err(Error::Parse(format!("expected schema {want}, found {found}")))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

pub fn module_file(m: &GeneralizedModule) -> ModuleFile {
    ModuleFile {
        schema: MODULE_SCHEMA.into(),
        label: m.label().into(),
        moduli: m.space.group.moduli.clone(),
        basis: m.space.basis().to_vec(),
        modes: m.modes.iter().map(|((v, k), op)| ModeFile { v: *v, m: *k, entries: entries(op) }).collect(),
        l_minus: entries(&m.l_minus),
        l_nil: entries(&m.l_nil),
        l_plus: entries(&m.l_plus),
        cutoff: m.cutoff.clone(),
    }
}

pub fn module_from_file(f: &ModuleFile) -> Result<GeneralizedModule> {
    check_schema(&f.schema, MODULE_SCHEMA)?;
    let dim = f.basis.len();
    let space = GradedSpace::new(f.label.clone(), GradeGroup { moduli: f.moduli.clone() }, f.basis.clone())?;
    let mut modes = BTreeMap::new();
    for mf in &f.modes {
        if let Some((r, c, _)) = mf.entries.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(Error::Parse(format!("mode ({}, {}) has entry ({r}, {c}) outside dimension {dim}", mf.v, mf.m)));
        }
        modes.insert((mf.v, mf.m), linear(&mf.entries));
    }
    Ok(GeneralizedModule::new(space, modes, linear(&f.l_minus), linear(&f.l_nil), linear(&f.l_plus), f.cutoff.clone()))
}

pub fn module_to_json(m: &GeneralizedModule) -> String {
    serde_json::to_string_pretty(&module_file(m)).expect("module serializes")
}

pub fn module_from_json(text: &str) -> Result<GeneralizedModule> {
    module_from_file(&parse(text, "module file")?)
}

pub fn algebra_to_json(alg: &VertexAlgebra) -> String {
    let f = AlgebraFile {
        schema: ALGEBRA_SCHEMA.into(),
        name: alg.name.clone(),
        vacuum: alg.vacuum,
        mode_vectors: alg.mode_vectors.clone(),
        conformal: alg.conformal.as_ref().map(|c| c.iter().map(|(i, v)| (*i, v.clone())).collect()),
        module: module_file(&alg.module),
    };
    serde_json::to_string_pretty(&f).expect("algebra serializes")
}

pub fn algebra_from_json(text: &str) -> Result<VertexAlgebra> {
    let f: AlgebraFile = parse(text, "algebra file")?;
    check_schema(&f.schema, ALGEBRA_SCHEMA)?;
    Ok(VertexAlgebra {
        name: f.name,
        module: Arc::new(module_from_file(&f.module)?),
        vacuum: f.vacuum,
        conformal: f.conformal.map(|c| c.into_iter().collect()),
        mode_vectors: f.mode_vectors,
    })
}

/// Serializes `y` with the given file names for the algebra and for
/// `(W3, W1, W2)`; use [`ALGEBRA_MODULE`] for the adjoint module.
pub fn operator_to_json(y: &LogIntwOp, algebra: &str, names: [&str; 3]) -> Result<String> {
    let mut coefficients = Vec::new();
    for (n, k) in y.support() {
        let too_big = || Error::Unsupported(format!("exponent {n} does not fit the file format"));
        let (a, b) = n.re.numer_denom_i64().ok_or_else(too_big)?;
        let (c, d) = n.im.numer_denom_i64().ok_or_else(too_big)?;
        let mut matrix = Vec::new();
        for ((i, j), v) in y.coefficient(&n, k) {
            for (r, s) in v {
                let c = s.as_constant().ok_or_else(|| Error::Unsupported(format!("symbolic coefficient {s} cannot be written")))?;
                matrix.push((i, j, r, c));
            }
        }
        coefficients.push(CoefficientFile { n: [a, b, c, d], k, matrix });
    }
    let f = OperatorFile {
        schema: OPERATOR_SCHEMA.into(),
        algebra: algebra.into(),
        ty: TypeFile { w3: names[0].into(), w1: names[1].into(), w2: names[2].into() },
        coefficients,
    };
    Ok(serde_json::to_string_pretty(&f)?)
}

/// Loads an operator file and everything it references (paths relative to
/// the operator file).
pub fn load_operator(path: &Path) -> Result<(Arc<VertexAlgebra>, LogIntwOp)> {
    let f: OperatorFile = parse(&read(path)?, "operator file")?;
    check_schema(&f.schema, OPERATOR_SCHEMA)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let alg = Arc::new(algebra_from_json(&read(&dir.join(&f.algebra))?)?);
    let mut cache: BTreeMap<String, Arc<GeneralizedModule>> = BTreeMap::new();
    let mut module = |name: &str| -> Result<Arc<GeneralizedModule>> {
        if name == ALGEBRA_MODULE {
            return Ok(alg.module.clone());
        }
        if let Some(m) = cache.get(name) {
            return Ok(m.clone());
        }
        let p: PathBuf = dir.join(name);
        let m = Arc::new(module_from_json(&read(&p)?)?);
        cache.insert(name.to_string(), m.clone());
        Ok(m)
    };
    let (w3, w1, w2) = (module(&f.ty.w3)?, module(&f.ty.w1)?, module(&f.ty.w2)?);
    let ty = IntertwiningType::new(&w3, &w1, &w2);
    let mut coeffs = Vec::new();
    for c in f.coefficients {
        let [a, b, ci, d] = c.n;
        if b == 0 || d == 0 {
            return Err(Error::Parse("zero denominator in an exponent".into()));
        }
        for (i, j, r, _) in &c.matrix {
            if *i >= ty.w1.dim() || *j >= ty.w2.dim() || *r >= ty.w3.dim() {
                return Err(Error::Parse(format!("coefficient entry ({i}, {j}, {r}) outside the module dimensions")));
            }
        }
        coeffs.push((ExactComplex::new(Q::new(a, b), Q::new(ci, d)), c.k, c.matrix));
    }
    Ok((alg, LogIntwOp::from_coefficients(ty, &coeffs)))
}

/// Writes `algebra.json`, the module files and `operator.json` into `dir`;
/// modules shared between slots are written once.
pub fn export_operator(alg: &VertexAlgebra, y: &LogIntwOp, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = vec![dir.join("algebra.json")];
    fs::write(&written[0], algebra_to_json(alg))?;
    let slots = [("w3", &y.ty.w3), ("w1", &y.ty.w1), ("w2", &y.ty.w2)];
    let mut names: Vec<String> = Vec::new();
    for (k, (slot, m)) in slots.iter().enumerate() {
        let name = if Arc::ptr_eq(m, &alg.module) {
            ALGEBRA_MODULE.to_string()
        } else if let Some(prev) = (0..k).find(|p| Arc::ptr_eq(slots[*p].1, m)) {
            names[prev].clone()
        } else {
            let name = format!("{slot}.json");
            let path = dir.join(&name);
            fs::write(&path, module_to_json(m))?;
            written.push(path);
            name
        };
        names.push(name);
    }
    let path = dir.join("operator.json");
    fs::write(&path, operator_to_json(y, "algebra.json", [&names[0], &names[1], &names[2]])?)?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{Fixture, FixtureSpec};

    #[test]
    fn operator_round_trip_through_files() {
        let dir = std::env::temp_dir().join(format!("logtensor-io-{}", std::process::id()));
        let spec: FixtureSpec = "heis:0,1/2".parse().unwrap();
        let f = Fixture::load(&spec, 3).unwrap();
        export_operator(&f.alg, &f.op, &dir).unwrap();
        let (alg, op) = load_operator(&dir.join("operator.json")).unwrap();
        assert!(Arc::ptr_eq(&op.ty.w1, &alg.module));
        assert_eq!(op.components, f.op.components);
        assert_eq!(module_to_json(&op.ty.w3), module_to_json(&f.op.ty.w3));
        fs::remove_dir_all(&dir).ok();
    }
}
