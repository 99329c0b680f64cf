//! Itô algebras: finite bases of stochastic differentials with a bilinear
//! multiplication table, the built-in tables, and linear changes of basis.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, GaussianRational, Monomial, Scalar};

/// A basis differential of some algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DifferentialLabel {
    pub name: String,
    pub index: usize,
}

/// Scalar-linear combination of basis differentials, keyed by label index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Differential {
    terms: BTreeMap<usize, Scalar>,
}

impl Differential {
    pub fn zero() -> Self {
        Differential::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, Scalar::one())
    }

    pub fn term(index: usize, coef: Scalar) -> Self {
        let mut d = Differential::zero();
        d.add_term(index, coef);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut d = Differential::zero();
        for (i, c) in terms {
            d.add_term(i, c);
        }
        d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coefficient(&self, index: usize) -> Scalar {
        self.terms.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, index: usize, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(index).or_insert_with(Scalar::zero);
        *slot += &coef;
        if slot.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn add(&self, other: &Differential) -> Differential {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Differential {
        Differential::from_terms(self.terms().map(|(i, v)| (i, v * c)))
    }

    fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> Differential {
        Differential::from_terms(self.terms().map(|(i, v)| (i, f(v))))
    }
}

/// Names accepted by [`builtin_algebra`].
pub const BUILTIN_NAMES: [&str; 7] = [
    "classical1d",
    "classicalPlanar",
    "quantumPQ",
    "classicalZ",
    "quantumA",
    "quantumPQhat",
    "quantumAhat",
];

/// The seven built-in multiplication tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    /// `dX·dX = dT`
    Classical1d,
    /// Independent `dX`, `dY`.
    ClassicalPlanar,
    /// Noncommuting `dP`, `dQ` of variance `σ²`.
    QuantumPQ,
    /// Complex basis `dZ`, `dZbar` of the planar table.
    ClassicalZ,
    /// `dA`, `dAdag` built from `dP`, `dQ`.
    QuantumA,
    /// Unit-variance `dPhat`, `dQhat`.
    QuantumPQhat,
    /// `dAhat`, `dAhatDag`, symbolic in `σ₊`, `σ₋`.
    QuantumAhat,
}

impl Builtin {
    pub const ALL: [Builtin; 7] = [
        Builtin::Classical1d,
        Builtin::ClassicalPlanar,
        Builtin::QuantumPQ,
        Builtin::ClassicalZ,
        Builtin::QuantumA,
        Builtin::QuantumPQhat,
        Builtin::QuantumAhat,
    ];

    pub fn name(self) -> &'static str {
        BUILTIN_NAMES[self as usize]
    }

    /// Whether the table depends on a concrete value of `σ²`.
    pub fn needs_sigma_squared(self) -> bool {
        matches!(self, Builtin::QuantumPQ | Builtin::QuantumA | Builtin::QuantumPQhat)
    }

    /// Builds the table. `sigma_sq` is required exactly when
    /// [`needs_sigma_squared`](Self::needs_sigma_squared) holds and ignored otherwise.
    pub fn algebra(self, sigma_sq: Option<&BigRational>) -> Result<ItoAlgebra> {
        let need = || {
            sigma_sq.cloned().ok_or_else(|| Error::MissingSigmaSquared(self.name().to_string()))
        };
        let c = |v: GaussianRational| Scalar::constant(v);
        let one = || Scalar::one();
        let half = || Scalar::ratio(1, 2);
        let alg = match self {
            Builtin::Classical1d => ItoAlgebra::from_table(&["dX", "dT"], "dT", &[("dX", "dX", one())]),
            Builtin::ClassicalPlanar => ItoAlgebra::from_table(
                &["dX", "dY", "dT"],
                "dT",
                &[("dX", "dX", one()), ("dY", "dY", one())],
            ),
            Builtin::ClassicalZ => ItoAlgebra::from_table(
                &["dZ", "dZbar", "dT"],
                "dT",
                &[("dZ", "dZbar", half()), ("dZbar", "dZ", half())],
            ),
            Builtin::QuantumPQ => {
                let s2 = need()?;
                ItoAlgebra::from_table(
                    &["dP", "dQ", "dT"],
                    "dT",
                    &[
                        ("dP", "dP", Scalar::from_rational(s2.clone())),
                        ("dP", "dQ", -Scalar::i()),
                        ("dQ", "dP", Scalar::i()),
                        ("dQ", "dQ", Scalar::from_rational(s2)),
                    ],
                )
            }
            Builtin::QuantumA => {
                let s2 = need()?;
                let h = BigRational::new(1.into(), 2.into());
                let plus = &h * (&s2 + BigRational::one());
                let minus = &h * (&s2 - BigRational::one());
                ItoAlgebra::from_table(
                    &["dA", "dAdag", "dT"],
                    "dT",
                    &[("dA", "dAdag", c(plus.into())), ("dAdag", "dA", c(minus.into()))],
                )
            }
            Builtin::QuantumPQhat => {
                let s2 = need()?;
                if s2.is_zero() {
                    return Err(Error::InvalidSigma("0".into()));
                }
                let inv = c(GaussianRational::new(BigRational::zero(), s2.recip()));
                ItoAlgebra::from_table(
                    &["dPhat", "dQhat", "dT"],
                    "dT",
                    &[
                        ("dPhat", "dPhat", one()),
                        ("dPhat", "dQhat", -inv.clone()),
                        ("dQhat", "dPhat", inv),
                        ("dQhat", "dQhat", one()),
                    ],
                )
            }
            Builtin::QuantumAhat => ItoAlgebra::from_table(
                &["dAhat", "dAhatDag", "dT"],
                "dT",
                &[("dAhat", "dAhatDag", Scalar::sigma_plus()), ("dAhatDag", "dAhat", Scalar::sigma_minus())],
            ),
        };
        let alg = alg.expect("built-in tables are well formed");
        debug_assert!(alg.time_is_annihilating());
        Ok(alg)
    }
}

impl FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| Error::UnknownAlgebra {
            name: s.to_string(),
            valid: BUILTIN_NAMES.join(", "),
        })
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up a built-in table by name.
pub fn builtin_algebra(name: &str, sigma_sq: Option<&BigRational>) -> Result<ItoAlgebra> {
    name.parse::<Builtin>()?.algebra(sigma_sq)
}

/// An Itô algebra with a distinguished time differential.
///
/// Absent table entries are zero products. User-defined algebras need not
/// annihilate time; that property is only asserted for the built-ins.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ItoAlgebra {
    labels: Vec<DifferentialLabel>,
    time_index: usize,
    /// Dense `dim × dim` table, row = left factor.
    table: Vec<Vec<Differential>>,
}

impl ItoAlgebra {
    /// An algebra with the given labels and an all-zero table.
    pub fn new(labels: &[&str], time: &str) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in labels {
            if l.is_empty() || !seen.insert(*l) {
                return Err(Error::InvalidBasisChange(format!("duplicate or empty label `{l}`")));
            }
        }
        let time_index = labels
            .iter()
            .position(|l| *l == time)
            .ok_or_else(|| Error::ForeignLabel(time.to_string()))?;
        let dim = labels.len();
        Ok(ItoAlgebra {
            labels: labels
                .iter()
                .enumerate()
                .map(|(index, name)| DifferentialLabel { name: name.to_string(), index })
                .collect(),
            time_index,
            table: vec![vec![Differential::zero(); dim]; dim],
        })
    }

    /// Builds an algebra whose only nonzero products are `left·right = coef·time`.
    pub fn from_table(labels: &[&str], time: &str, entries: &[(&str, &str, Scalar)]) -> Result<Self> {
        let mut alg = Self::new(labels, time)?;
        let t = alg.time_index;
        for (l, r, c) in entries {
            let (i, j) = (alg.index_of(l)?, alg.index_of(r)?);
            alg.table[i][j] = Differential::term(t, c.clone());
        }
        Ok(alg)
    }

    /// Sets a general table entry `left·right = result`.
    pub fn set_product(&mut self, left: usize, right: usize, result: Differential) -> Result<()> {
        self.check_index(left)?;
        self.check_index(right)?;
        for (k, _) in result.terms() {
            self.check_index(k)?;
        }
        self.table[left][right] = result;
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[DifferentialLabel] {
        &self.labels
    }

    pub fn label_name(&self, index: usize) -> &str {
        &self.labels[index].name
    }

    pub fn time_index(&self) -> usize {
        self.time_index
    }

    pub fn time_label(&self) -> &str {
        self.label_name(self.time_index)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| Error::ForeignLabel(name.to_string()))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(Error::ForeignIndex(index))
        }
    }

    /// The basis differential with the given name.
    pub fn basis(&self, name: &str) -> Result<Differential> {
        Ok(Differential::basis(self.index_of(name)?))
    }

    /// Table entry for two basis elements.
    pub fn product(&self, left: usize, right: usize) -> &Differential {
        &self.table[left][right]
    }

    /// Bilinear extension of the table.
    pub fn multiply(&self, a: &Differential, b: &Differential) -> Result<Differential> {
        let mut out = Differential::zero();
        for (i, ca) in a.terms() {
            self.check_index(i)?;
            for (j, cb) in b.terms() {
                self.check_index(j)?;
                let coef = ca * cb;
                for (k, ck) in self.table[i][j].terms() {
                    out.add_term(k, &coef * ck);
                }
            }
        }
        Ok(out)
    }

    /// Every product with the time differential vanishes, in both orders.
    pub fn time_is_annihilating(&self) -> bool {
        let t = self.time_index;
        (0..self.dim()).all(|i| self.table[i][t].is_zero() && self.table[t][i].is_zero())
    }

    /// Whether all products of two basis elements are zero.
    pub fn is_trivial(&self) -> bool {
        self.table.iter().flatten().all(Differential::is_zero)
    }

    /// The same basis with every product set to zero.
    pub fn trivialized(&self) -> ItoAlgebra {
        let dim = self.dim();
        ItoAlgebra { table: vec![vec![Differential::zero(); dim]; dim], ..self.clone() }
    }

    /// Whether the table is symmetric, i.e. the algebra is commutative.
    pub fn is_commutative(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Checks `(ab)c = a(bc)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (da, db, dc) = (Differential::basis(a), Differential::basis(b), Differential::basis(c));
                    let left = self.multiply(&self.multiply(&da, &db).unwrap(), &dc).unwrap();
                    let right = self.multiply(&da, &self.multiply(&db, &dc).unwrap()).unwrap();
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Substitutes exact values for `σ₊`, `σ₋` in every table entry.
    pub fn evaluate(&self, sigma_plus: &GaussianRational, sigma_minus: &GaussianRational) -> ItoAlgebra {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|d| d.map_scalars(|s| s.substitute(sigma_plus, sigma_minus))).collect())
            .collect();
        ItoAlgebra { table, ..self.clone() }
    }

    /// Renames the basis, keeping the table.
    pub fn renamed(&self, names: &[&str]) -> Result<ItoAlgebra> {
        if names.len() != self.dim() {
            return Err(Error::InvalidBasisChange(format!("expected {} names, got {}", self.dim(), names.len())));
        }
        let mut out = ItoAlgebra::new(names, names[self.time_index])?;
        out.table = self.table.clone();
        Ok(out)
    }

    /// Re-expresses the table in a new basis.
    ///
    /// `rows[a] = (name, combination)` defines new basis element `a` as a
    /// combination of the old labels. Exactly one row must be the old time
    /// differential itself; it becomes the new time symbol. The matrix must be
    /// invertible over the coefficient ring, i.e. its determinant must be a
    /// nonzero constant.
    pub fn change_of_basis(&self, rows: &[(&str, Differential)]) -> Result<ItoAlgebra> {
        let n = self.dim();
        if rows.len() != n {
            return Err(Error::InvalidBasisChange(format!("need {n} rows, got {}", rows.len())));
        }
        let mut matrix = vec![vec![Scalar::zero(); n]; n];
        for (a, (_, comb)) in rows.iter().enumerate() {
            for (i, c) in comb.terms() {
                self.check_index(i)?;
                matrix[a][i] = c.clone();
            }
        }
        let time_row = Differential::basis(self.time_index);
        let new_time = match rows.iter().filter(|(_, c)| *c == time_row).count() {
            1 => rows.iter().position(|(_, c)| *c == time_row).unwrap(),
            _ => return Err(Error::TimeNotFixed),
        };
        let inverse = invert(&matrix)?;
        let names: Vec<&str> = rows.iter().map(|(name, _)| *name).collect();
        let mut out = ItoAlgebra::new(&names, names[new_time])?;
        for a in 0..n {
            for b in 0..n {
                let old = self.multiply(&rows[a].1, &rows[b].1)?;
                // old basis e_k = Σ_c inverse[k][c] e'_c
                let mut new = Differential::zero();
                for (k, ck) in old.terms() {
                    for (c, inv) in inverse[k].iter().enumerate() {
                        new.add_term(c, ck * inv);
                    }
                }
                out.table[a][b] = new;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut table = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                if d.is_zero() {
                    continue;
                }
                let mut result = Vec::new();
                for (k, c) in d.terms() {
                    for (m, v) in c.ordered_terms() {
                        result.push(ResultJson {
                            label: self.label_name(k).to_string(),
                            coef: CoefJson { re: fmt_rational(&v.re), im: fmt_rational(&v.im), ep: m.ep, em: m.em },
                        });
                    }
                }
                table.push(EntryJson {
                    left: self.label_name(i).to_string(),
                    right: self.label_name(j).to_string(),
                    result,
                });
            }
        }
        AlgebraJson {
            labels: self.labels.iter().map(|l| l.name.clone()).collect(),
            time: self.time_label().to_string(),
            table,
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<ItoAlgebra> {
        let names: Vec<&str> = j.labels.iter().map(String::as_str).collect();
        let mut alg = ItoAlgebra::new(&names, &j.time)?;
        for e in &j.table {
            let (l, r) = (alg.index_of(&e.left)?, alg.index_of(&e.right)?);
            let mut d = alg.table[l][r].clone();
            for res in &e.result {
                let k = alg.index_of(&res.label)?;
                let c = crate::scalar::ScalarTermJson {
                    ep: res.coef.ep,
                    em: res.coef.em,
                    re: res.coef.re.clone(),
                    im: res.coef.im.clone(),
                }
                .coefficient()?;
                let mut s = Scalar::zero();
                s.add_term(Monomial::new(res.coef.ep, res.coef.em), c);
                d.add_term(k, s);
            }
            alg.table[l][r] = d;
        }
        Ok(alg)
    }

    /// Renders a differential such as `s+ dT` or `1/2 dX - i dY`.
    pub fn render(&self, d: &Differential) -> String {
        if d.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (i, c)) in d.terms().enumerate() {
            let name = self.label_name(i);
            let text = if c.is_one() {
                name.to_string()
            } else if c.is_compound() {
                format!("({c}) {name}")
            } else if -c == Scalar::one() {
                format!("-{name}")
            } else {
                format!("{c} {name}")
            };
            match (k, text.strip_prefix('-')) {
                (0, _) => out.push_str(&text),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest.trim_start());
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(&text);
                }
            }
        }
        out
    }

    /// The table as rows of rendered entries, left factor by row.
    pub fn render_table(&self) -> Vec<Vec<String>> {
        self.table.iter().map(|row| row.iter().map(|d| self.render(d)).collect()).collect()
    }
}

/// Inverse of a square Scalar matrix whose determinant is a nonzero constant.
fn invert(m: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let n = m.len();
    if m.iter().flatten().all(Scalar::is_constant) {
        let consts: Vec<Vec<GaussianRational>> =
            m.iter().map(|r| r.iter().map(|s| s.as_constant().unwrap()).collect()).collect();
        return Ok(gauss_jordan(consts)?
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::constant).collect())
            .collect());
    }
    if n > 8 {
        return Err(Error::InvalidBasisChange("symbolic basis changes are limited to dimension 8".into()));
    }
    let det = determinant(m);
    if det.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let inv_det = det
        .as_constant()
        .and_then(|c| c.inv())
        .ok_or_else(|| Error::NonUnitDeterminant(det.to_string()))?;
    // inverse[i][j] = cofactor(j, i) / det
    let mut out = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let minor: Vec<Vec<Scalar>> = m
                .iter()
                .enumerate()
                .filter(|(r, _)| *r != j)
                .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, v)| v.clone()).collect())
                .collect();
            let mut cof = determinant(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            *cell = cof.scale(&inv_det);
        }
    }
    Ok(out)
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<Scalar>]) -> Scalar {
    let n = m.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut acc = Scalar::zero();
    for (c, v) in m[0].iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Scalar>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = v * &determinant(&minor);
        if c % 2 == 0 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

fn gauss_jordan(mut a: Vec<Vec<GaussianRational>>) -> Result<Vec<Vec<GaussianRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<GaussianRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv().unwrap();
        for k in 0..n {
            a[col][k] = &a[col][k] * &p;
            inv[col][k] = &inv[col][k] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..n {
                a[r][k] = &a[r][k] - &(&f * &a[col][k]);
                inv[r][k] = &inv[r][k] - &(&f * &inv[col][k]);
            }
        }
    }
    Ok(inv)
}

/// JSON form of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub labels: Vec<String>,
    pub time: String,
    pub table: Vec<EntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub left: String,
    pub right: String,
    pub result: Vec<ResultJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub label: String,
    pub coef: CoefJson,
}

/// One monomial of a table coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefJson {
    pub re: String,
    pub im: String,
    pub ep: u32,
    pub em: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn entry(alg: &ItoAlgebra, l: &str, r: &str) -> Differential {
        alg.multiply(&alg.basis(l).unwrap(), &alg.basis(r).unwrap()).unwrap()
    }

    #[test]
    fn classical_1d_table() {
        let alg = builtin_algebra("classical1d", None).unwrap();
        let t = alg.basis("dT").unwrap();
        assert_eq!(entry(&alg, "dX", "dX"), t);
        assert!(entry(&alg, "dX", "dT").is_zero());
        assert!(entry(&alg, "dT", "dT").is_zero());
    }

    #[test]
    fn quantum_a_hat_table() {
        let alg = builtin_algebra("quantumAhat", None).unwrap();
        let t = alg.time_index();
        assert_eq!(entry(&alg, "dAhat", "dAhatDag"), Differential::term(t, Scalar::sigma_plus()));
        assert_eq!(entry(&alg, "dAhatDag", "dAhat"), Differential::term(t, Scalar::sigma_minus()));
        assert!(entry(&alg, "dAhat", "dAhat").is_zero());
        assert!(!alg.is_commutative());
    }

    #[test]
    fn classical_z_table() {
        let alg = builtin_algebra("classicalZ", None).unwrap();
        let t = alg.time_index();
        assert_eq!(entry(&alg, "dZ", "dZbar"), Differential::term(t, Scalar::ratio(1, 2)));
        assert!(entry(&alg, "dZ", "dZ").is_zero());
    }

    #[test]
    fn quantum_pq_product() {
        let alg = builtin_algebra("quantumPQ", Some(&rat(3, 1))).unwrap();
        assert_eq!(entry(&alg, "dP", "dQ"), Differential::term(2, -Scalar::i()));
        assert_eq!(entry(&alg, "dP", "dP"), Differential::term(2, Scalar::from_int(3)));
        assert_eq!(
            builtin_algebra("quantumPQ", None).unwrap_err(),
            Error::MissingSigmaSquared("quantumPQ".into())
        );
    }

    #[test]
    fn planar_bilinear_expansion() {
        let alg = builtin_algebra("classicalPlanar", None).unwrap();
        let s = alg.basis("dX").unwrap().add(&alg.basis("dY").unwrap());
        assert_eq!(alg.multiply(&s, &s).unwrap(), Differential::term(2, Scalar::from_int(2)));
    }

    #[test]
    fn unknown_name_lists_valid_names() {
        match builtin_algebra("nope", None) {
            Err(Error::UnknownAlgebra { valid, .. }) => assert!(valid.contains("quantumAhat")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn foreign_label_rejected() {
        let alg = builtin_algebra("classical1d", None).unwrap();
        assert!(alg.multiply(&Differential::basis(7), &Differential::basis(0)).is_err());
        assert_eq!(alg.basis("dY").unwrap_err(), Error::ForeignLabel("dY".into()));
    }

    #[test]
    fn builtins_annihilate_time_and_associate() {
        let s2 = rat(5, 2);
        for b in Builtin::ALL {
            let alg = b.algebra(Some(&s2)).unwrap();
            assert!(alg.time_is_annihilating(), "{b}");
            assert!(alg.is_associative(), "{b}");
        }
    }

    #[test]
    fn dz_basis_change_gives_classical_z() {
        let planar = builtin_algebra("classicalPlanar", None).unwrap();
        let h = GaussianRational::ratio(1, 2);
        let ih = &h * &GaussianRational::i();
        let dz = Differential::from_terms([(0, Scalar::constant(-&ih)), (1, Scalar::constant(h.clone()))]);
        let dzbar = Differential::from_terms([(0, Scalar::constant(ih)), (1, Scalar::constant(h))]);
        let changed = planar
            .change_of_basis(&[("dZ", dz), ("dZbar", dzbar), ("dT", Differential::basis(2))])
            .unwrap();
        assert_eq!(changed, builtin_algebra("classicalZ", None).unwrap());
    }

    #[test]
    fn identity_basis_change_is_noop() {
        let alg = builtin_algebra("quantumAhat", None).unwrap();
        let rows: Vec<(&str, Differential)> =
            alg.labels().iter().map(|l| (l.name.as_str(), Differential::basis(l.index))).collect();
        assert_eq!(alg.change_of_basis(&rows).unwrap(), alg);
    }

    #[test]
    fn basis_change_errors() {
        let alg = builtin_algebra("classicalPlanar", None).unwrap();
        let singular = [("a", Differential::basis(0)), ("b", Differential::basis(0)), ("dT", Differential::basis(2))];
        assert_eq!(alg.change_of_basis(&singular).unwrap_err(), Error::SingularMatrix);
        let moved = [
            ("a", Differential::basis(0)),
            ("b", Differential::basis(1)),
            ("c", Differential::from_terms([(2, Scalar::from_int(2))])),
        ];
        assert_eq!(alg.change_of_basis(&moved).unwrap_err(), Error::TimeNotFixed);
        let symbolic = [
            ("a", Differential::term(0, Scalar::sigma_plus())),
            ("b", Differential::basis(1)),
            ("dT", Differential::basis(2)),
        ];
        assert!(matches!(alg.change_of_basis(&symbolic), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn symbolic_unimodular_basis_change() {
        let alg = builtin_algebra("quantumAhat", None).unwrap();
        // a = dAhat + σ₊ dAhatDag has constant determinant
        let rows = [
            ("a", Differential::from_terms([(0, Scalar::one()), (1, Scalar::sigma_plus())])),
            ("b", Differential::basis(1)),
            ("dT", Differential::basis(2)),
        ];
        let changed = alg.change_of_basis(&rows).unwrap();
        // b·a = dAhatDag·(dAhat + σ₊ dAhatDag) = σ₋ dT
        assert_eq!(changed.product(1, 0), &Differential::term(2, Scalar::sigma_minus()));
        let back = changed
            .change_of_basis(&[
                ("dAhat", Differential::from_terms([(0, Scalar::one()), (1, -Scalar::sigma_plus())])),
                ("dAhatDag", Differential::basis(1)),
                ("dT", Differential::basis(2)),
            ])
            .unwrap();
        assert_eq!(back, alg);
    }

    #[test]
    fn json_round_trip_matches_format() {
        let alg = builtin_algebra("quantumPQ", Some(&rat(2, 1))).unwrap();
        let j = serde_json::to_value(alg.to_json()).unwrap();
        let pq = j["table"].as_array().unwrap().iter().find(|e| e["left"] == "dP" && e["right"] == "dQ").unwrap();
        assert_eq!(
            pq["result"][0],
            serde_json::json!({"label": "dT", "coef": {"re": "0", "im": "-1", "ep": 0, "em": 0}})
        );
        let back: AlgebraJson = serde_json::from_value(j).unwrap();
        assert_eq!(ItoAlgebra::from_json(&back).unwrap(), alg);
    }

    #[test]
    fn render_differentials() {
        let alg = builtin_algebra("quantumAhat", None).unwrap();
        assert_eq!(alg.render(alg.product(0, 1)), "s+ dT");
        let d = Differential::from_terms([(0, Scalar::ratio(1, 2)), (1, -Scalar::i())]);
        assert_eq!(alg.render(&d), "1/2 dAhat - i dAhatDag");
    }
}
