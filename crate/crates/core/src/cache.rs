//! Disk cache for transition and Jack tables.
//!
//! Caching is off until a directory is configured ([`set_cache_dir`]); the
//! in-memory registries work either way, so cold and warm runs produce
//! identical results. Files are JSON with a versioned header and a sha256
//! over the payload; a file that fails parsing or the hash check is ignored
//! and rebuilt. Writes go through a temp file and an atomic rename.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::matrix::Matrix;
use crate::partition::partitions_of;
use crate::scalar::{parse_rational, Poly, RatFunc, Rational, Scalar};
use crate::symfunc::TransitionTable;

pub const FORMAT_VERSION: u32 = 1;

fn config() -> &'static Mutex<Option<PathBuf>> {
    static DIR: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| Mutex::new(None))
}

/// Points the disk cache at `dir` (created if missing); `None` disables it.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    if let Some(d) = &dir {
        let _ = fs::create_dir_all(d);
    }
    *config().lock().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    config().lock().unwrap().clone()
}

fn atomic_write(path: &Path, contents: &str) {
    let tmp = path.with_extension("json.tmp");
    if fs::write(&tmp, contents).is_ok() {
        let _ = fs::rename(&tmp, path);
    }
}

fn payload_hash(payload: &Value) -> String {
    hex::encode(Sha256::digest(payload.to_string().as_bytes()))
}

// ---------------------------------------------------------------------------
// Scalar encoding
// ---------------------------------------------------------------------------

/// Scalars that can live in cache files, tagged by parameter mode.
pub trait ScalarCodec: Scalar {
    const MODE: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl ScalarCodec for Rational {
    const MODE: &'static str = "rational";

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Option<Self> {
        parse_rational(v.as_str()?).ok()
    }
}

fn poly_to_json(p: &Poly) -> Value {
    let mut map = serde_json::Map::new();
    for (deg, c) in p.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            map.insert(deg.to_string(), Value::String(c.to_string()));
        }
    }
    Value::Object(map)
}

fn poly_from_json(v: &Value) -> Option<Poly> {
    let map = v.as_object()?;
    let mut coeffs = Vec::new();
    for (deg, c) in map {
        let deg: usize = deg.parse().ok()?;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, num_traits::Zero::zero());
        }
        coeffs[deg] = parse_rational(c.as_str()?).ok()?;
    }
    Some(Poly::from_coeffs(coeffs))
}

impl ScalarCodec for RatFunc {
    const MODE: &'static str = "ratfunc";

    fn to_json(&self) -> Value {
        json!({
            "num": poly_to_json(self.numerator()),
            "den": poly_to_json(self.denominator()),
        })
    }

    fn from_json(v: &Value) -> Option<Self> {
        let num = poly_from_json(v.get("num")?)?;
        let den = poly_from_json(v.get("den")?)?;
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(num, den))
    }
}

// ---------------------------------------------------------------------------
// Transition tables
// ---------------------------------------------------------------------------

fn matrix_to_rows(m: &Matrix<Rational>) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|r| {
            Value::Array(
                m.row(r)
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect(),
            )
        })
        .collect();
    Value::Array(rows)
}

fn matrix_from_rows(v: &Value, n: usize) -> Option<Matrix<Rational>> {
    let rows = v.as_array()?;
    if rows.len() != n {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let row = row.as_array()?;
        if row.len() != n {
            return None;
        }
        let parsed: Option<Vec<Rational>> = row
            .iter()
            .map(|c| parse_rational(c.as_str()?).ok())
            .collect();
        out.push(parsed?);
    }
    Some(Matrix::from_rows(out))
}

fn transition_path(dir: &Path, degree: u32, direction: &str) -> PathBuf {
    dir.join(format!("transition_d{degree}_{direction}.json"))
}

pub fn store_transition(table: &TransitionTable) {
    let Some(dir) = cache_dir() else { return };
    for (direction, m) in [("p_to_m", &table.p_to_m), ("m_to_p", &table.m_to_p)] {
        let rows = matrix_to_rows(m);
        let doc = json!({
            "format_version": FORMAT_VERSION,
            "kind": "transition",
            "degree": table.degree,
            "direction": direction,
            "rows": rows,
            "sha256": payload_hash(&rows),
        });
        atomic_write(
            &transition_path(&dir, table.degree, direction),
            &doc.to_string(),
        );
    }
}

pub fn load_transition(degree: u32) -> Option<TransitionTable> {
    let dir = cache_dir()?;
    let n = partitions_of(degree).len();
    let mut matrices = Vec::new();
    for direction in ["p_to_m", "m_to_p"] {
        let text = fs::read_to_string(transition_path(&dir, degree, direction)).ok()?;
        let doc: Value = serde_json::from_str(&text).ok()?;
        if doc.get("format_version")?.as_u64()? != FORMAT_VERSION as u64
            || doc.get("degree")?.as_u64()? != degree as u64
            || doc.get("direction")?.as_str()? != direction
        {
            return None;
        }
        let rows = doc.get("rows")?;
        if payload_hash(rows) != doc.get("sha256")?.as_str()? {
            return None;
        }
        matrices.push(matrix_from_rows(rows, n)?);
    }
    let m_to_p = matrices.pop()?;
    let p_to_m = matrices.pop()?;
    Some(TransitionTable {
        degree,
        p_to_m,
        m_to_p,
    })
}

// ---------------------------------------------------------------------------
// Jack tables
// ---------------------------------------------------------------------------

/// Short content key for a Jack parameter, used in file names.
pub fn param_key<S: ScalarCodec>(param: &S) -> String {
    let h = hex::encode(Sha256::digest(param.to_json().to_string().as_bytes()));
    h[..12].to_string()
}

fn jack_path<S: ScalarCodec>(dir: &Path, degree: u32, param: &S) -> PathBuf {
    dir.join(format!(
        "jack_d{degree}_{}_{}.json",
        S::MODE,
        param_key(param)
    ))
}

pub fn store_jack<S: ScalarCodec>(degree: u32, param: &S, rows: &[Vec<S>], norms: &[S]) {
    let Some(dir) = cache_dir() else { return };
    let payload = json!({
        "monomial_rows": rows
            .iter()
            .map(|r| Value::Array(r.iter().map(ScalarCodec::to_json).collect()))
            .collect::<Vec<_>>(),
        "norms": norms.iter().map(ScalarCodec::to_json).collect::<Vec<_>>(),
    });
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "kind": "jack",
        "degree": degree,
        "param_mode": S::MODE,
        "param": param.to_json(),
        "payload": payload,
        "sha256": payload_hash(&payload),
    });
    atomic_write(&jack_path(&dir, degree, param), &doc.to_string());
}

#[allow(clippy::type_complexity)]
pub fn load_jack<S: ScalarCodec>(degree: u32, param: &S) -> Option<(Vec<Vec<S>>, Vec<S>)> {
    let dir = cache_dir()?;
    let text = fs::read_to_string(jack_path(&dir, degree, param)).ok()?;
    let doc: Value = serde_json::from_str(&text).ok()?;
    if doc.get("format_version")?.as_u64()? != FORMAT_VERSION as u64
        || doc.get("degree")?.as_u64()? != degree as u64
        || doc.get("param_mode")?.as_str()? != S::MODE
        || S::from_json(doc.get("param")?)? != *param
    {
        return None;
    }
    let payload = doc.get("payload")?;
    if payload_hash(payload) != doc.get("sha256")?.as_str()? {
        return None;
    }
    let n = partitions_of(degree).len();
    let rows_json = payload.get("monomial_rows")?.as_array()?;
    if rows_json.len() != n {
        return None;
    }
    let mut rows = Vec::with_capacity(n);
    for row in rows_json {
        let row = row.as_array()?;
        if row.len() != n {
            return None;
        }
        let parsed: Option<Vec<S>> = row.iter().map(S::from_json).collect();
        rows.push(parsed?);
    }
    let norms_json = payload.get("norms")?.as_array()?;
    if norms_json.len() != n {
        return None;
    }
    let norms: Option<Vec<S>> = norms_json.iter().map(S::from_json).collect();
    Some((rows, norms?))
}

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CacheEntry {
    pub file: String,
    pub kind: String,
    pub degree: u64,
    pub detail: String,
    pub intact: bool,
}

/// Lists recognized cache files with their headers and integrity status.
pub fn inspect() -> Vec<CacheEntry> {
    let Some(dir) = cache_dir() else {
        return Vec::new();
    };
    let mut entries = Vec::new();
    let Ok(read) = fs::read_dir(&dir) else {
        return entries;
    };
    let mut files: Vec<PathBuf> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| is_cache_file(p))
        .collect();
    files.sort();
    for path in files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let parsed = fs::read_to_string(&path)
            .ok()
            .and_then(|t| serde_json::from_str::<Value>(&t).ok());
        match parsed {
            Some(doc) => {
                let kind = doc
                    .get("kind")
                    .and_then(Value::as_str)
                    .unwrap_or("?")
                    .to_string();
                let degree = doc.get("degree").and_then(Value::as_u64).unwrap_or(0);
                let detail = match kind.as_str() {
                    "transition" => doc
                        .get("direction")
                        .and_then(Value::as_str)
                        .unwrap_or("?")
                        .to_string(),
                    "jack" => format!(
                        "mode={}",
                        doc.get("param_mode").and_then(Value::as_str).unwrap_or("?")
                    ),
                    _ => String::new(),
                };
                let intact = match kind.as_str() {
                    "transition" => doc
                        .get("rows")
                        .zip(doc.get("sha256").and_then(Value::as_str))
                        .is_some_and(|(rows, h)| payload_hash(rows) == h),
                    "jack" => doc
                        .get("payload")
                        .zip(doc.get("sha256").and_then(Value::as_str))
                        .is_some_and(|(p, h)| payload_hash(p) == h),
                    _ => false,
                };
                entries.push(CacheEntry {
                    file: name,
                    kind,
                    degree,
                    detail,
                    intact,
                });
            }
            None => entries.push(CacheEntry {
                file: name,
                kind: "unreadable".into(),
                degree: 0,
                detail: String::new(),
                intact: false,
            }),
        }
    }
    entries
}

fn is_cache_file(p: &Path) -> bool {
    let Some(name) = p.file_name().and_then(|s| s.to_str()) else {
        return false;
    };
    name.ends_with(".json") && (name.starts_with("transition_") || name.starts_with("jack_"))
}

/// Removes recognized cache files; returns how many were deleted.
pub fn clear() -> usize {
    let Some(dir) = cache_dir() else { return 0 };
    let Ok(read) = fs::read_dir(&dir) else {
        return 0;
    };
    let mut removed = 0;
    for entry in read.filter_map(|e| e.ok()) {
        let path = entry.path();
        if is_cache_file(&path) && fs::remove_file(&path).is_ok() {
            removed += 1;
        }
    }
    removed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    struct DirGuard;
    impl Drop for DirGuard {
        fn drop(&mut self) {
            set_cache_dir(None);
        }
    }

    #[test]
    fn transition_and_jack_roundtrip() {
        let tmp = tempfile::tempdir().unwrap();
        set_cache_dir(Some(tmp.path().to_path_buf()));
        let _guard = DirGuard;

        let table = TransitionTable::build(3);
        store_transition(&table);
        let loaded = load_transition(3).expect("cached table loads");
        assert_eq!(loaded.p_to_m, table.p_to_m);
        assert_eq!(loaded.m_to_p, table.m_to_p);

        let param = rat(1, 2);
        let rows = vec![
            vec![rat(1, 1), rat(2, 3)],
            vec![rat(0, 1), rat(1, 1)],
        ];
        let norms = vec![rat(5, 7), rat(-3, 2)];
        store_jack(2, &param, &rows, &norms);
        let (r2, n2) = load_jack::<Rational>(2, &param).expect("cached jack loads");
        assert_eq!(r2, rows);
        assert_eq!(n2, norms);
        // different parameter misses
        assert!(load_jack::<Rational>(2, &rat(1, 3)).is_none());

        let listing = inspect();
        assert_eq!(listing.len(), 3);
        assert!(listing.iter().all(|e| e.intact));

        // corrupt one file: it is reported and then ignored by the loader
        let victim = tmp.path().join("transition_d3_p_to_m.json");
        let mut text = fs::read_to_string(&victim).unwrap();
        text = text.replace("\"rows\":[[\"", "\"rows\":[[\"9");
        fs::write(&victim, text).unwrap();
        assert!(load_transition(3).is_none());
        assert!(inspect().iter().any(|e| !e.intact));

        assert_eq!(clear(), 3);
        assert!(inspect().is_empty());
    }

    #[test]
    fn ratfunc_codec_roundtrip() {
        let x = RatFunc::var();
        let f = (x.clone() * x.clone() - RatFunc::one())
            .checked_div(&(x + RatFunc::from_rational(rat(2, 1))))
            .unwrap();
        let v = f.to_json();
        assert_eq!(RatFunc::from_json(&v).unwrap(), f);
    }
}
