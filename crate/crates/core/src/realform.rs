//! Real simple Lie algebras: restriction to `a*`, anisotropic roots, the
//! restricted root system with multiplicities, the lift of the restricted
//! longest element, and nonvanishing predictions.
//!
//! The restriction `pi` is stored as a matrix acting on simple-root
//! coordinates (column vectors): `pi(alpha_j) = sum_i P[i][j] alpha_i`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rootsys::{
    classify_cartan, euclidean_simple_roots, longest_word, normalize_type_name, CartanType,
    RootSystem, TypeLetter, Weight, WeylWord,
};

pub const CATALOG_SCHEMA: u32 = 1;

/// Shipped catalog.
pub const DEFAULT_CATALOG: &str = include_str!("../data/catalog.toml");

/// Coarse class of a real form, used for cone data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Split,
    QuasiSplit,
    Compact,
    NoncompactExceptional,
    Other,
}

/// Parameterized families with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    SlR(usize),
    Su(usize, usize),
    So(usize, usize),
    SpR(usize),
    Sp(usize, usize),
    SuStar(usize),
    SoStar(usize),
    Eiv,
    SplitExceptional(CartanType),
    Compact(CartanType),
}

/// Nonvanishing cone data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ConeSpec {
    /// `X = Q` (dominant part).
    FullChamber,
    /// `X = {0}`.
    ZeroOnly,
    /// `X = Q` intersected with `c_i = 0` for the listed (1-based) indices.
    Subspace { zero: Vec<usize> },
    /// `X = Lambda` with `Lambda` spanned by the given root-coordinate vectors.
    Sublattice { generators: Vec<Vec<i64>> },
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Nonvanishing {
    Nonzero,
    Zero,
    Unknown,
}

impl fmt::Display for Nonvanishing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Nonvanishing::Nonzero => "nonzero",
            Nonvanishing::Zero => "zero",
            Nonvanishing::Unknown => "unknown",
        };
        write!(f, "{}", s)
    }
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormKind::Split => "split",
            FormKind::QuasiSplit => "quasi_split",
            FormKind::Compact => "compact",
            FormKind::NoncompactExceptional => "noncompact_exceptional",
            FormKind::Other => "other",
        };
        write!(f, "{}", s)
    }
}

impl fmt::Display for ConeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeSpec::FullChamber => write!(f, "full chamber"),
            ConeSpec::ZeroOnly => write!(f, "{{0}}"),
            ConeSpec::Subspace { zero } => write!(f, "subspace c_i = 0 for i in {:?}", zero),
            ConeSpec::Sublattice { generators } => write!(f, "sublattice spanned by {:?}", generators),
            ConeSpec::Unknown => write!(f, "unknown"),
        }
    }
}

/// One catalog record as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub label: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub ambient: String,
    pub kind: FormKind,
    /// Rows of the restriction matrix on simple-root coordinates.
    pub projection: Vec<Vec<String>>,
    /// Black (anisotropic) simple roots, 1-based.
    pub black: Vec<usize>,
    pub restricted_type: String,
    /// Multiplicities by increasing restricted root length.
    pub multiplicities: Vec<u32>,
    pub cone: ConeSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub schema: u32,
    #[serde(rename = "entry", default)]
    pub entries: Vec<CatalogRecord>,
}

/// Restricted root data derived from the projection.
#[derive(Debug, Clone)]
pub struct RestrictedSystem {
    /// Nonzero restricted roots (root coordinates) with multiplicities.
    pub roots: Vec<(Vec<Rat>, u32)>,
    /// Simple restricted roots.
    pub simple: Vec<Vec<Rat>>,
    /// Roots of the anisotropic subsystem.
    pub delta0: Vec<Vec<i64>>,
    /// Simple roots of the anisotropic subsystem (0-based ambient indices).
    pub delta0_basis: Vec<usize>,
    pub type_name: String,
    pub multiplicities: Vec<u32>,
}

/// A validated catalog entry.
#[derive(Debug, Clone)]
pub struct RealFormEntry {
    pub label: String,
    pub family: Option<Family>,
    pub kind: FormKind,
    pub rs: RootSystem,
    pub projection: Matrix,
    pub black: Vec<usize>,
    pub expected_type: String,
    pub expected_multiplicities: Vec<u32>,
    pub cone: ConeSpec,
    pub restricted: RestrictedSystem,
    lift: Option<WeylWord>,
}

impl RealFormEntry {
    pub fn ambient(&self) -> CartanType {
        self.rs.cartan_type().expect("catalog ambient is simple")
    }

    pub fn restricted_rank(&self) -> usize {
        linalg::rank(&self.projection)
    }

    pub fn is_split(&self) -> bool {
        self.kind == FormKind::Split
    }

    pub fn is_compact(&self) -> bool {
        self.kind == FormKind::Compact
    }

    /// Restriction of a root-coordinate vector.
    pub fn restrict(&self, x: &[Rat]) -> Vec<Rat> {
        linalg::mat_vec(&self.projection, x)
    }
}

fn parse_err(s: &str) -> Error {
    Error::UnknownLabel(s.to_string())
}

fn parse_two(inner: &str) -> Option<(usize, usize)> {
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Parse a label or alias into a family.
pub fn parse_family(label: &str) -> Result<Family> {
    let s: String = label.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let bad = || parse_err(label);
    let digits = |t: &str| -> Option<usize> {
        if !t.is_empty() && t.chars().all(|c| c.is_ascii_digit()) {
            t.parse().ok()
        } else {
            None
        }
    };
    let two_digits = |t: &str| -> Option<(usize, usize)> {
        let b = t.as_bytes();
        if b.len() == 2 && b.iter().all(u8::is_ascii_digit) {
            Some(((b[0] - b'0') as usize, (b[1] - b'0') as usize))
        } else {
            None
        }
    };
    let exceptional = |t: &str| -> Option<Family> {
        let (ty, rest) = t.split_at(2.min(t.len()));
        let ct: CartanType = ty.parse().ok()?;
        match rest {
            "s" | "-split" | "split" => Some(Family::SplitExceptional(ct)),
            "c" | "-compact" | "compact" => Some(Family::Compact(ct)),
            _ => None,
        }
    };
    let fam = if s == "eiv" || s == "e6(-26)" || s == "e6-26" {
        Family::Eiv
    } else if let Some(f) = exceptional(&s).filter(|_| s.starts_with(['e', 'f', 'g'])) {
        match f {
            Family::SplitExceptional(ct) if matches!(ct.letter, TypeLetter::E | TypeLetter::F | TypeLetter::G) => f,
            Family::Compact(ct) if matches!(ct.letter, TypeLetter::E | TypeLetter::F | TypeLetter::G) => f,
            _ => return Err(bad()),
        }
    } else if let Some(rest) = s.strip_prefix("su*(").and_then(|r| r.strip_suffix(')')) {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SuStar)?
    } else if let Some(rest) = s.strip_prefix("sustar") {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SuStar)?
    } else if let Some(rest) = s.strip_prefix("so*(").and_then(|r| r.strip_suffix(')')) {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SoStar)?
    } else if let Some(rest) = s.strip_prefix("sostar") {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SoStar)?
    } else if let Some(rest) = s.strip_prefix("sl(") {
        let inner = rest.strip_suffix(",r)").ok_or_else(bad)?;
        Family::SlR(digits(inner).ok_or_else(bad)?)
    } else if let Some(rest) = s.strip_prefix("sl").and_then(|r| r.strip_suffix('r')) {
        Family::SlR(digits(rest).ok_or_else(bad)?)
    } else if let Some(rest) = s.strip_prefix("sp(").and_then(|r| r.strip_suffix(",r)")) {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SpR)?
    } else if let Some(rest) = s.strip_prefix("sp").and_then(|r| r.strip_suffix('r')).filter(|r| !r.starts_with('(')) {
        half(digits(rest).ok_or_else(bad)?, label).map(Family::SpR)?
    } else {
        // su / so / sp with (p,q), compact or digit aliases
        let (head, rest) = s.split_at(2.min(s.len()));
        let compact_of = |n: usize| -> Result<Family> {
            let ct = match head {
                "su" if n >= 2 => CartanType::new(TypeLetter::A, n - 1),
                "so" if n >= 5 && n % 2 == 1 => CartanType::new(TypeLetter::B, (n - 1) / 2),
                "so" if n >= 6 && n.is_multiple_of(2) => CartanType::new(TypeLetter::D, n / 2),
                "sp" if n >= 2 => CartanType::new(TypeLetter::C, n),
                "sp" if n == 1 => CartanType::new(TypeLetter::A, 1),
                _ => return Err(bad()),
            }?;
            Ok(Family::Compact(ct))
        };
        let pq = |p: usize, q: usize| -> Result<Family> {
            let (p, q) = (p.min(q), p.max(q));
            match head {
                "su" => Ok(Family::Su(p, q)),
                "so" => Ok(Family::So(p, q)),
                "sp" => Ok(Family::Sp(p, q)),
                _ => Err(bad()),
            }
        };
        if let Some(inner) = rest.strip_prefix('(') {
            let (inner, tail) = inner.split_once(')').ok_or_else(bad)?;
            if let Some((p, q)) = parse_two(inner) {
                if !tail.is_empty() {
                    return Err(bad());
                }
                pq(p, q)?
            } else {
                let n = digits(inner).ok_or_else(bad)?;
                if !(tail.is_empty() || tail == "-compact" || tail == "compact") {
                    return Err(bad());
                }
                compact_of(n)?
            }
        } else if let Some(n) = rest.strip_suffix('c').and_then(digits) {
            compact_of(n)?
        } else if let Some((p, q)) = two_digits(rest) {
            pq(p, q)?
        } else {
            return Err(bad());
        }
    };
    check_family(fam, label)?;
    Ok(fam)
}

fn half(n: usize, label: &str) -> Result<usize> {
    if n.is_multiple_of(2) && n > 0 {
        Ok(n / 2)
    } else {
        Err(Error::InvalidInput(format!("{}: parameter must be even", label)))
    }
}

fn check_family(f: Family, label: &str) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidInput(format!("{}: {}", label, m)));
    match f {
        Family::SlR(n) if n < 2 => bad("sl(n,R) needs n >= 2"),
        Family::Su(p, q) if p == 0 || p + q < 2 => bad("su(p,q) needs p, q >= 1"),
        Family::So(0, _) => bad("so(p,q) needs p, q >= 1"),
        Family::So(p, q) if p + q < 5 => bad("so(p,q) needs p + q >= 5 (smaller cases are not simple or coincide with other families)"),
        Family::SpR(n) if n < 2 => bad("sp(2n,R) needs n >= 2 (sp(2,R) = sl(2,R))"),
        Family::Sp(0, _) => bad("sp(p,q) needs p, q >= 1"),
        Family::SuStar(n) if n < 2 => bad("su*(2n) needs n >= 2"),
        Family::SoStar(n) if n < 3 => bad("so*(2n) needs n >= 3"),
        Family::SplitExceptional(ct) if !matches!(ct.letter, TypeLetter::E | TypeLetter::F | TypeLetter::G) => {
            bad("split exceptional needs an exceptional type")
        }
        _ => Ok(()),
    }
}

impl Family {
    pub fn ambient(&self) -> CartanType {
        let ct = |l, r| CartanType::new(l, r).expect("family parameters checked");
        match *self {
            Family::SlR(n) => ct(TypeLetter::A, n - 1),
            Family::Su(p, q) => ct(TypeLetter::A, p + q - 1),
            Family::So(p, q) if (p + q) % 2 == 1 => ct(TypeLetter::B, (p + q - 1) / 2),
            Family::So(p, q) => ct(TypeLetter::D, (p + q) / 2),
            Family::SpR(n) => ct(TypeLetter::C, n),
            Family::Sp(p, q) => ct(TypeLetter::C, p + q),
            Family::SuStar(n) => ct(TypeLetter::A, 2 * n - 1),
            Family::SoStar(n) => ct(TypeLetter::D, n),
            Family::Eiv => ct(TypeLetter::E, 6),
            Family::SplitExceptional(c) | Family::Compact(c) => c,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Family::SlR(n) => format!("sl({},R)", n),
            Family::Su(p, q) => format!("su({},{})", p, q),
            Family::So(p, q) => format!("so({},{})", p, q),
            Family::SpR(n) => format!("sp({},R)", 2 * n),
            Family::Sp(p, q) => format!("sp({},{})", p, q),
            Family::SuStar(n) => format!("su*({})", 2 * n),
            Family::SoStar(n) => format!("so*({})", 2 * n),
            Family::Eiv => "EIV".into(),
            Family::SplitExceptional(c) => format!("{}-split", c),
            Family::Compact(c) => match c.letter {
                TypeLetter::A => format!("su({})-compact", c.rank + 1),
                TypeLetter::B => format!("so({})-compact", 2 * c.rank + 1),
                TypeLetter::C => format!("sp({})-compact", c.rank),
                TypeLetter::D => format!("so({})-compact", 2 * c.rank),
                _ => format!("{}-compact", c),
            },
        }
    }

    /// Short aliases accepted on the command line.
    pub fn aliases(&self) -> Vec<String> {
        let mut out = Vec::new();
        match *self {
            Family::SlR(n) => out.push(format!("sl{}r", n)),
            Family::Su(p, q) | Family::So(p, q) | Family::Sp(p, q) if p < 10 && q < 10 => {
                out.push(format!("{}{}{}", &self.label()[..2], p, q))
            }
            Family::SpR(n) => out.push(format!("sp{}r", 2 * n)),
            Family::SuStar(n) => out.push(format!("sustar{}", 2 * n)),
            Family::SoStar(n) => out.push(format!("sostar{}", 2 * n)),
            Family::Eiv => out.push("eiv".into()),
            Family::SplitExceptional(c) => out.push(format!("{}s", c).to_lowercase()),
            Family::Compact(c) => {
                let l = self.label();
                match c.letter {
                    TypeLetter::A | TypeLetter::B | TypeLetter::C | TypeLetter::D => {
                        let base = l.trim_end_matches("-compact");
                        let (h, rest) = base.split_at(2);
                        out.push(format!("{}{}c", h, rest.trim_matches(|c| c == '(' || c == ')')));
                    }
                    _ => out.push(format!("{}c", c).to_lowercase()),
                }
            }
            _ => {}
        }
        out
    }

    pub fn kind(&self) -> FormKind {
        match *self {
            Family::SlR(_) | Family::SpR(_) | Family::SplitExceptional(_) => FormKind::Split,
            Family::Su(1, 1) => FormKind::Split,
            Family::So(p, q) if q - p <= 1 => FormKind::Split,
            Family::So(p, q) if q - p == 2 => FormKind::QuasiSplit,
            Family::Su(p, q) if q - p <= 1 => FormKind::QuasiSplit,
            Family::Compact(_) => FormKind::Compact,
            Family::Eiv => FormKind::NoncompactExceptional,
            _ => FormKind::Other,
        }
    }

    /// Expected restricted type and multiplicities (by increasing length).
    pub fn expected_restricted(&self) -> (String, Vec<u32>) {
        let t = |s: String, m: Vec<u32>| (s, m);
        match *self {
            Family::SlR(n) => t(format!("A{}", n - 1), vec![1]),
            Family::Su(1, 1) => t("A1".into(), vec![1]),
            Family::Su(p, q) if p == q => t(format!("C{}", p), vec![2, 1]),
            Family::Su(1, q) => t("BC1".into(), vec![2 * (q as u32 - 1), 1]),
            Family::Su(p, q) => t(format!("BC{}", p), vec![2 * (q - p) as u32, 2, 1]),
            Family::So(1, q) => t("A1".into(), vec![q as u32 - 1]),
            Family::So(p, q) if p == q => t(format!("D{}", p), vec![1]),
            Family::So(p, q) => t(format!("B{}", p), vec![(q - p) as u32, 1]),
            Family::SpR(n) => t(format!("C{}", n), vec![1, 1]),
            Family::Sp(1, 1) => t("A1".into(), vec![3]),
            Family::Sp(p, q) if p == q => t(format!("C{}", p), vec![4, 3]),
            Family::Sp(1, q) => t("BC1".into(), vec![4 * (q as u32 - 1), 3]),
            Family::Sp(p, q) => t(format!("BC{}", p), vec![4 * (q - p) as u32, 4, 3]),
            Family::SuStar(n) => t(format!("A{}", n - 1), vec![4]),
            Family::SoStar(3) => t("BC1".into(), vec![4, 1]),
            Family::SoStar(n) if n % 2 == 0 => t(format!("C{}", n / 2), vec![4, 1]),
            Family::SoStar(n) => t(format!("BC{}", (n - 1) / 2), vec![4, 4, 1]),
            Family::Eiv => t("A2".into(), vec![8]),
            Family::SplitExceptional(c) if matches!(c.letter, TypeLetter::E) => t(c.to_string(), vec![1]),
            Family::SplitExceptional(c) => t(c.to_string(), vec![1, 1]),
            Family::Compact(_) => t("none".into(), vec![]),
        }
    }

    pub fn cone(&self) -> ConeSpec {
        match (self.kind(), *self) {
            (FormKind::Split | FormKind::QuasiSplit | FormKind::NoncompactExceptional, _) => ConeSpec::FullChamber,
            (FormKind::Compact, _) => ConeSpec::ZeroOnly,
            (_, Family::So(p, q)) if (p + q) % 2 == 1 => {
                ConeSpec::Sublattice { generators: even_sum_generators((p + q - 1) / 2) }
            }
            _ => ConeSpec::Unknown,
        }
    }

    /// Spanning vectors of `a*` in the Euclidean realization, or `None` when
    /// the restriction is the identity, zero, or defined by a black set.
    fn a_star(&self) -> Option<Vec<Vec<Rat>>> {
        let e = |dim: usize, idx: &[(usize, i64)]| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); dim];
            for &(i, c) in idx {
                v[i] = Rat::from_int(c);
            }
            v
        };
        match *self {
            Family::Su(p, q) => {
                let n = p + q;
                Some((0..p).map(|i| e(n, &[(i, 1), (n - 1 - i, -1)])).collect())
            }
            Family::So(p, q) => {
                let r = self.ambient().rank;
                let _ = q;
                Some((0..p).map(|i| e(r, &[(i, 1)])).collect())
            }
            Family::Sp(p, q) => {
                let r = p + q;
                Some((0..p).map(|i| e(r, &[(2 * i, 1), (2 * i + 1, 1)])).collect())
            }
            Family::SuStar(n) => {
                let d = 2 * n;
                Some(
                    (0..n - 1)
                        .map(|i| e(d, &[(2 * i, 1), (2 * i + 1, 1), (2 * i + 2, -1), (2 * i + 3, -1)]))
                        .collect(),
                )
            }
            Family::SoStar(n) => Some((0..n / 2).map(|i| e(n, &[(2 * i, 1), (2 * i + 1, 1)])).collect()),
            _ => None,
        }
    }

    /// Restriction matrix on simple-root coordinates.
    pub fn projection(&self, rs: &RootSystem) -> Result<Matrix> {
        let r = rs.rank();
        match *self {
            Family::SlR(_) | Family::SpR(_) | Family::SplitExceptional(_) => Ok(linalg::identity(r)),
            Family::Compact(_) => Ok(linalg::zeros(r, r)),
            Family::Eiv => Ok(black_complement_projection(rs, &[1, 2, 3, 4])),
            _ => {
                let span = self.a_star().expect("classical family");
                let simple = euclidean_simple_roots(self.ambient()).expect("classical realization");
                Ok(euclidean_projection(&simple, &span))
            }
        }
    }
}

/// Even-coordinate-sum sublattice of the root lattice of `B_n`, as a basis in
/// simple-root coordinates: `alpha_1, ..., alpha_{n-1}, 2 alpha_n`.
pub fn even_sum_generators(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = if i == n - 1 { 2 } else { 1 };
            v
        })
        .collect()
}

/// Orthogonal projection onto `span`, transported to simple-root coordinates.
fn euclidean_projection(simple: &[Vec<Rat>], span: &[Vec<Rat>]) -> Matrix {
    let k = span.len();
    let gram: Matrix = (0..k)
        .map(|i| (0..k).map(|j| span[i].iter().zip(&span[j]).map(|(a, b)| a * b).sum()).collect())
        .collect();
    let ginv = linalg::inverse(&gram).expect("independent spanning set");
    let cols: Vec<Vec<Rat>> = simple
        .iter()
        .map(|alpha| {
            let dots: Vec<Rat> = span.iter().map(|v| v.iter().zip(alpha).map(|(a, b)| a * b).sum()).collect();
            let coef = linalg::mat_vec(&ginv, &dots);
            let mut img = vec![Rat::zero(); alpha.len()];
            for (c, v) in coef.iter().zip(span) {
                for (x, y) in img.iter_mut().zip(v) {
                    *x += c * y;
                }
            }
            linalg::coordinates(simple, &img).expect("projection stays in the root span")
        })
        .collect();
    linalg::transpose(&cols)
}

/// `I - (orthogonal projection onto the span of the black simple roots)`.
pub fn black_complement_projection(rs: &RootSystem, black: &[usize]) -> Matrix {
    let r = rs.rank();
    let b = rs.root_gram();
    let k = black.len();
    let gbb: Matrix = black.iter().map(|&i| black.iter().map(|&j| b[i][j].clone()).collect()).collect();
    let ginv = if k == 0 { vec![] } else { linalg::inverse(&gbb).expect("black roots independent") };
    let mut p = linalg::identity(r);
    for j in 0..r {
        // projection of alpha_j onto span(alpha_b): sum_b c_b alpha_b
        let rhs: Vec<Rat> = black.iter().map(|&i| b[i][j].clone()).collect();
        let c = linalg::mat_vec(&ginv, &rhs);
        for (cb, &i) in c.iter().zip(black) {
            p[i][j] -= cb;
        }
    }
    p
}

fn rat_matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn black_from_projection(p: &Matrix) -> Vec<usize> {
    let r = p.len();
    (0..r).filter(|&j| (0..r).all(|i| p[i][j].is_zero())).collect()
}

/// Catalog record for a parameterized family.
pub fn family_record(f: Family) -> Result<CatalogRecord> {
    let ambient = f.ambient();
    let rs = RootSystem::of_type(ambient)?;
    let p = f.projection(&rs)?;
    let (restricted_type, multiplicities) = f.expected_restricted();
    Ok(CatalogRecord {
        label: f.label(),
        aliases: f.aliases(),
        ambient: ambient.to_string(),
        kind: f.kind(),
        black: black_from_projection(&p).into_iter().map(|i| i + 1).collect(),
        projection: rat_matrix_to_strings(&p),
        restricted_type,
        multiplicities,
        cone: f.cone(),
    })
}

/// Families shipped in the default catalog: classical families with ambient
/// rank at most 6 and restricted rank at most 5, EIV, split G2/F4/E6 and
/// compact forms of rank at most 3.
pub fn default_families() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(Family::SlR(n));
    }
    for n in 2..=7 {
        for p in 1..=n / 2 {
            if p <= 5 {
                out.push(Family::Su(p, n - p));
            }
        }
    }
    for n in 5..=13 {
        for p in 1..=n / 2 {
            let rank = n / 2;
            if rank <= 6 && p <= 5 {
                out.push(Family::So(p, n - p));
            }
        }
    }
    for n in 2..=5 {
        out.push(Family::SpR(n));
    }
    for n in 2..=6 {
        for p in 1..=n / 2 {
            out.push(Family::Sp(p, n - p));
        }
    }
    out.push(Family::SuStar(2));
    out.push(Family::SuStar(3));
    for n in 3..=6 {
        out.push(Family::SoStar(n));
    }
    out.push(Family::Eiv);
    for t in ["G2", "F4", "E6"] {
        out.push(Family::SplitExceptional(t.parse().unwrap()));
    }
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2"] {
        out.push(Family::Compact(t.parse().unwrap()));
    }
    out
}

/// The default catalog file regenerated from the family definitions.
pub fn generate_default_catalog() -> Result<CatalogFile> {
    let entries = default_families().into_iter().map(family_record).collect::<Result<Vec<_>>>()?;
    Ok(CatalogFile { schema: CATALOG_SCHEMA, entries })
}

impl CatalogFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: CatalogFile =
            toml::from_str(text).map_err(|e| Error::Integrity(format!("catalog file: {}", e)))?;
        if file.schema != CATALOG_SCHEMA {
            return Err(Error::Integrity(format!(
                "catalog schema version {} (expected {})",
                file.schema, CATALOG_SCHEMA
            )));
        }
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("catalog serializes")
    }
}

fn normalize_label(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase()
}

/// Catalog of real forms: stored records plus on-demand family records.
#[derive(Debug, Clone)]
pub struct Catalog {
    records: Vec<CatalogRecord>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::from_file(CatalogFile::parse(DEFAULT_CATALOG).expect("shipped catalog parses"))
    }
}

impl Catalog {
    pub fn from_file(file: CatalogFile) -> Self {
        Catalog { records: file.entries }
    }

    /// Default records followed by those in `text` (later records win).
    pub fn with_extra(text: &str) -> Result<Self> {
        let mut c = Catalog::default();
        let extra = CatalogFile::parse(text)?;
        c.records.extend(extra.entries);
        Ok(c)
    }

    pub fn records(&self) -> &[CatalogRecord] {
        &self.records
    }

    fn find(&self, label: &str) -> Option<&CatalogRecord> {
        let key = normalize_label(label);
        self.records.iter().rev().find(|r| {
            normalize_label(&r.label) == key || r.aliases.iter().any(|a| normalize_label(a) == key)
        })
    }

    /// Look up `label`, falling back to parameterized families.
    pub fn entry(&self, label: &str) -> Result<RealFormEntry> {
        if let Some(rec) = self.find(label) {
            let family = parse_family(&rec.label).ok();
            return RealFormEntry::from_record(rec, family);
        }
        let family = parse_family(label)?;
        if let Some(rec) = self.find(&family.label()) {
            return RealFormEntry::from_record(rec, Some(family));
        }
        RealFormEntry::from_record(&family_record(family)?, Some(family))
    }
}

/// Look up a label in the default catalog.
pub fn catalog_entry(label: &str) -> Result<RealFormEntry> {
    Catalog::default().entry(label)
}

fn integrity(label: &str, m: impl fmt::Display) -> Error {
    Error::Integrity(format!("{}: {}", label, m))
}

impl RealFormEntry {
    pub fn from_record(rec: &CatalogRecord, family: Option<Family>) -> Result<Self> {
        let ct: CartanType = rec.ambient.parse()?;
        let rs = RootSystem::of_type(ct)?;
        let r = rs.rank();
        let projection: Matrix = rec
            .projection
            .iter()
            .map(|row| row.iter().map(|s| s.parse::<Rat>().map_err(|e| integrity(&rec.label, e))).collect())
            .collect::<Result<_>>()?;
        if projection.len() != r || projection.iter().any(|row| row.len() != r) {
            return Err(integrity(&rec.label, "projection matrix has the wrong shape"));
        }
        let black: Vec<usize> = rec
            .black
            .iter()
            .map(|&i| {
                if (1..=r).contains(&i) {
                    Ok(i - 1)
                } else {
                    Err(integrity(&rec.label, "black index out of range"))
                }
            })
            .collect::<Result<_>>()?;
        let restricted = validate(&rec.label, &rs, &projection, &black, rec.kind)?;
        if normalize_type_name(&restricted.type_name) != normalize_type_name(&rec.restricted_type) {
            return Err(integrity(
                &rec.label,
                format!("restricted type {} but catalog expects {}", restricted.type_name, rec.restricted_type),
            ));
        }
        if restricted.multiplicities != rec.multiplicities {
            return Err(integrity(
                &rec.label,
                format!(
                    "restricted multiplicities {:?} but catalog expects {:?}",
                    restricted.multiplicities, rec.multiplicities
                ),
            ));
        }
        if let ConeSpec::Sublattice { generators } = &rec.cone {
            check_sublattice(&rec.label, r, generators)?;
        }
        if let ConeSpec::Subspace { zero } = &rec.cone {
            if zero.iter().any(|&i| i == 0 || i > r) {
                return Err(integrity(&rec.label, "subspace cone index out of range"));
            }
        }
        let mut entry = RealFormEntry {
            label: rec.label.clone(),
            family,
            kind: rec.kind,
            rs,
            projection,
            black,
            expected_type: rec.restricted_type.clone(),
            expected_multiplicities: rec.multiplicities.clone(),
            cone: rec.cone.clone(),
            restricted,
            lift: None,
        };
        if !entry.is_compact() {
            entry.lift = Some(compute_lift(&entry)?);
        }
        Ok(entry)
    }
}

fn check_sublattice(label: &str, r: usize, gens: &[Vec<i64>]) -> Result<()> {
    if gens.len() != r || gens.iter().any(|g| g.len() != r) {
        return Err(integrity(label, "sublattice needs a basis of rank-many generators"));
    }
    let m: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let d = linalg::smith_diagonal(&m);
    let index = d.iter().fold(BigInt::one(), |a, x| a * x.abs());
    if d.len() != r || index != BigInt::from(2) {
        return Err(integrity(label, format!("sublattice has index {} in Q, expected 2", index)));
    }
    Ok(())
}

/// Check the catalog invariants and derive the restricted root data.
fn validate(label: &str, rs: &RootSystem, p: &Matrix, black: &[usize], kind: FormKind) -> Result<RestrictedSystem> {
    let r = rs.rank();
    let fail = |m: String| Err(integrity(label, m));
    if linalg::mat_mul(p, p) != *p {
        return fail("projection is not idempotent".into());
    }
    let b = rs.root_gram();
    if linalg::mat_mul(&b, p) != linalg::transpose(&linalg::mat_mul(&b, p)) {
        return fail("projection is not self-adjoint".into());
    }
    let zero = p.iter().all(|row| row.iter().all(Rat::is_zero));
    let identity = linalg::is_identity(p);
    if kind == FormKind::Split && !(black.is_empty() && identity) {
        return fail("split entry needs an empty black set and identity projection".into());
    }
    if kind != FormKind::Split && identity {
        return fail("identity projection on a non-split entry".into());
    }
    if (kind == FormKind::Compact) != zero {
        return fail("projection is zero exactly for compact entries".into());
    }
    let restrict = |root: &[i64]| -> Vec<Rat> {
        let x: Vec<Rat> = root.iter().map(|&c| Rat::from_int(c)).collect();
        linalg::mat_vec(p, &x)
    };
    // black set = simple roots killed by pi
    let killed: Vec<usize> = (0..r)
        .filter(|&j| {
            let mut e = vec![0; r];
            e[j] = 1;
            restrict(&e).iter().all(Rat::is_zero)
        })
        .collect();
    if killed != black {
        return fail(format!("black set {:?} differs from the simple roots killed by the projection", black));
    }
    let mut delta0 = Vec::new();
    let mut images: Vec<(Vec<Rat>, u32)> = Vec::new();
    let mut pos_index: HashMap<Vec<Rat>, usize> = HashMap::new();
    let rho: Vec<Rat> = (0..r).map(|_| Rat::one()).collect();
    let rho_root = rs.fw_to_root(&rho);
    let p_rho = linalg::mat_vec(p, &rho_root);
    for root in rs.positive_roots() {
        let img = restrict(root);
        if img.iter().all(Rat::is_zero) {
            if root.iter().enumerate().any(|(i, &c)| c != 0 && !black.contains(&i)) {
                return fail(format!("root {:?} restricts to zero but is not in the black span", root));
            }
            delta0.push(root.clone());
            delta0.push(root.iter().map(|x| -x).collect());
            continue;
        }
        if root.iter().enumerate().all(|(i, &c)| c == 0 || black.contains(&i)) {
            return fail(format!("black-span root {:?} has nonzero restriction", root));
        }
        // ordering compatibility: pi(rho) is strictly positive on pi(alpha)
        if !rs.inner_root(&p_rho, &img).is_positive() {
            return fail("positive system is not compatible with the restriction".into());
        }
        match pos_index.get(&img) {
            Some(&k) => images[k].1 += 1,
            None => {
                pos_index.insert(img.clone(), images.len());
                images.push((img, 1));
            }
        }
    }
    let all: HashMap<Vec<Rat>, u32> = images
        .iter()
        .flat_map(|(v, m)| [(v.clone(), *m), (v.iter().map(|x| -x).collect(), *m)])
        .collect();
    // closure under restricted reflections, multiplicities invariant
    for (beta, _) in &images {
        let bb = rs.inner_root(beta, beta);
        for (gamma, m) in &all {
            let c = Rat::from_int(2) * rs.inner_root(gamma, beta) / &bb;
            let img: Vec<Rat> = gamma.iter().zip(beta).map(|(g, x)| g - &(&c * x)).collect();
            if all.get(&img) != Some(m) {
                return fail("restricted roots are not closed under their reflections".into());
            }
        }
    }
    let positive: HashSet<Vec<Rat>> = images.iter().map(|(v, _)| v.clone()).collect();
    let simple: Vec<Vec<Rat>> = images
        .iter()
        .map(|(v, _)| v.clone())
        .filter(|v| {
            !positive.iter().any(|g| {
                let d: Vec<Rat> = v.iter().zip(g).map(|(a, b)| a - b).collect();
                positive.contains(&d)
            })
        })
        .collect();
    let rank_a = linalg::rank(p);
    if simple.len() != rank_a {
        return fail(format!("{} simple restricted roots for restricted rank {}", simple.len(), rank_a));
    }
    let k = simple.len();
    let mut cartan = vec![vec![0i64; k]; k];
    for i in 0..k {
        let ii = rs.inner_root(&simple[i], &simple[i]);
        for j in 0..k {
            let v = Rat::from_int(2) * rs.inner_root(&simple[i], &simple[j]) / &ii;
            cartan[i][j] = v.to_i64().ok_or_else(|| integrity(label, "non-integral restricted Cartan entry"))?;
        }
    }
    let non_reduced = images.iter().any(|(v, _)| {
        let double: Vec<Rat> = v.iter().map(|x| x * &Rat::from_int(2)).collect();
        positive.contains(&double)
    });
    let type_name = if k == 0 {
        "none".to_string()
    } else {
        let reduced = classify_cartan(&cartan);
        if non_reduced {
            if reduced.contains('x') {
                return fail("non-reduced restricted system is reducible".into());
            }
            format!("BC{}", k)
        } else {
            reduced
        }
    };
    if k > 0 {
        let sigma = RootSystem::from_cartan(cartan).map_err(|e| integrity(label, e))?;
        let indivisible = images
            .iter()
            .filter(|(v, _)| {
                let half: Vec<Rat> = v.iter().map(|x| x / &Rat::from_int(2)).collect();
                !positive.contains(&half)
            })
            .count();
        if sigma.positive_roots().len() != indivisible {
            return fail("restricted roots do not form the system generated by the simple ones".into());
        }
    }
    let mut by_length: BTreeMap<Rat, Vec<u32>> = BTreeMap::new();
    for (v, m) in &images {
        by_length.entry(rs.inner_root(v, v)).or_default().push(*m);
    }
    let mut multiplicities = Vec::new();
    for ms in by_length.values() {
        if ms.iter().any(|m| *m != ms[0]) {
            return fail("multiplicity not constant on a root length".into());
        }
        multiplicities.push(ms[0]);
    }
    Ok(RestrictedSystem {
        roots: images,
        simple,
        delta0,
        delta0_basis: black.to_vec(),
        type_name,
        multiplicities,
    })
}

/// Restricted roots, anisotropic roots and the anisotropic basis.
pub fn restricted_system(entry: &RealFormEntry) -> &RestrictedSystem {
    &entry.restricted
}

/// Whether `w` commutes with the restriction and sends every positive root
/// with nonzero restriction to a negative root.
pub fn is_valid_lift(entry: &RealFormEntry, w: &WeylWord) -> Result<bool> {
    let rs = &entry.rs;
    let m = w.root_matrix(rs)?;
    if linalg::mat_mul(&m, &entry.projection) != linalg::mat_mul(&entry.projection, &m) {
        return Ok(false);
    }
    for root in rs.positive_roots() {
        let x: Vec<Rat> = root.iter().map(|&c| Rat::from_int(c)).collect();
        if entry.restrict(&x).iter().all(Rat::is_zero) {
            continue;
        }
        let img = linalg::mat_vec(&m, &x);
        if !img.iter().all(|c| !c.is_positive()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest Weyl group searched by the exhaustive lift fallback.
const LIFT_SEARCH_LIMIT: usize = 60_000;

fn compute_lift(entry: &RealFormEntry) -> Result<WeylWord> {
    let rs = &entry.rs;
    let all: Vec<usize> = (0..rs.rank()).collect();
    let candidate = longest_word(rs, &entry.black).then(&longest_word(rs, &all)).reduced(rs)?;
    if is_valid_lift(entry, &candidate)? {
        return Ok(candidate);
    }
    let group = rs.weyl_group(LIFT_SEARCH_LIMIT).map_err(|_| {
        Error::Capability(format!("{}: Weyl group too large for the exhaustive lift search", entry.label))
    })?;
    let mut best: Option<WeylWord> = None;
    for w in group {
        if let Some(b) = &best {
            if w.length > b.len() {
                break;
            }
        }
        let image = w.apply(&rs.rho());
        let word = rs.reduced_word_from_rho_image(&image);
        if is_valid_lift(entry, &word)? && best.as_ref().is_none_or(|b| word < *b) {
            best = Some(word);
        }
    }
    best.ok_or_else(|| integrity(&entry.label, "no Weyl element lifts the restricted longest element"))
}

/// Word in the ambient Weyl group lifting the restricted longest element.
pub fn restricted_w0_lift(entry: &RealFormEntry) -> Result<WeylWord> {
    entry.lift.clone().ok_or_else(|| {
        Error::NotApplicable(format!("{} is compact: the restricted Weyl group is trivial", entry.label))
    })
}

/// The lift, or the identity word for compact entries.
pub fn lift_or_identity(entry: &RealFormEntry) -> WeylWord {
    entry.lift.clone().unwrap_or_default()
}

/// Membership of a root-coordinate vector in the lattice with basis `gens`.
pub fn in_lattice(gens: &[Vec<i64>], x: &[Rat]) -> bool {
    let cols: Matrix = linalg::transpose(
        &gens.iter().map(|g| g.iter().map(|&c| Rat::from_int(c)).collect()).collect::<Matrix>(),
    );
    match linalg::solve(&cols, x) {
        Some(c) => c.iter().all(Rat::is_integer),
        None => false,
    }
}

/// Nonvanishing of `V_lambda^L` according to the entry's cone data. Weights
/// outside `Q` are always `Zero`.
pub fn predict_nonvanishing(entry: &RealFormEntry, lambda: &Weight) -> Nonvanishing {
    if !lambda.in_q() {
        return Nonvanishing::Zero;
    }
    let yes = |b: bool| if b { Nonvanishing::Nonzero } else { Nonvanishing::Zero };
    match &entry.cone {
        ConeSpec::FullChamber => Nonvanishing::Nonzero,
        ConeSpec::ZeroOnly => yes(lambda.fw().iter().all(Rat::is_zero)),
        ConeSpec::Subspace { zero } => yes(zero.iter().all(|&i| lambda.fw()[i - 1].is_zero())),
        ConeSpec::Sublattice { generators } => yes(in_lattice(generators, lambda.root())),
        ConeSpec::Unknown => Nonvanishing::Unknown,
    }
}
