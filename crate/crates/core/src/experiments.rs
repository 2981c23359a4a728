//! Codes of subgraphs of complete graphs under the transposition operator
//! `F_n`, and the orbit census of maps from triangle edges to hexagon edges.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geneo::LinearOperator;
use crate::graph::{indicator_string, subgraph_isomorphism_classes, unpack_indicator, Graph};
use crate::perception::Measurement;
use crate::permutant::{all_orbits, hexagon_triangle_context, orbit, transposition_permutant, Model};
use crate::rational::{self, Rational};

/// Coordinates in reverse order.
pub fn reversal(phi: &Measurement) -> Measurement {
    let mut values = phi.values().to_vec();
    values.reverse();
    Measurement::new(values)
}

/// `1 − φ` for a `0/1` vector.
pub fn complement(phi: &Measurement) -> Result<Measurement> {
    phi.values()
        .iter()
        .map(|v| {
            if v.is_zero() {
                Ok(Rational::one())
            } else if v.is_one() {
                Ok(Rational::zero())
            } else {
                Err(Error::OutOfRange(format!("entry {} is not 0 or 1", rational::format(v))))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Measurement::new)
}

/// Equality as multisets.
pub fn code_equivalent(c1: &Measurement, c2: &Measurement) -> Result<bool> {
    c1.check_compatible(c2)?;
    let mut a = c1.values().to_vec();
    let mut b = c2.values().to_vec();
    a.sort();
    b.sort();
    Ok(a == b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeRow {
    /// Indicator vector packed with the first edge as the most significant bit.
    #[serde(skip)]
    pub vector: u64,
    #[serde(rename = "vector")]
    pub indicator: String,
    pub code: Measurement,
    /// `code · |H|`, always integral.
    pub scaled_code: Vec<i64>,
    pub class: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeTable {
    pub n: usize,
    pub edge_labels: Vec<String>,
    /// `|H|`, the number of transpositions.
    pub scale: usize,
    pub class_count: usize,
    /// Indexed by packed vector.
    pub rows: Vec<CodeRow>,
}

impl CodeTable {
    pub fn row(&self, bits: &[u8]) -> &CodeRow {
        &self.rows[crate::graph::pack_indicator(bits) as usize]
    }

    pub fn edge_count(&self) -> usize {
        self.edge_labels.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("vector,scaled_code,class\n");
        for row in &self.rows {
            let scaled: Vec<String> = row.scaled_code.iter().map(i64::to_string).collect();
            writeln!(out, "{},{},{}", row.indicator, scaled.join(" "), row.class).expect("writing to a String");
        }
        out
    }
}

/// `F_n` on every edge subset of `K_n`, joined with the isomorphism classes.
pub fn build_code_table(n: usize) -> Result<CodeTable> {
    if !(3..=5).contains(&n) {
        return Err(Error::OutOfRange(format!("code tables need 3 <= n <= 5, got {n}")));
    }
    let permutant = transposition_permutant(n, Model::Edge)?;
    let op = LinearOperator::from_permutant(&permutant)?;
    let classes = subgraph_isomorphism_classes(n)?;
    let m = classes.edge_count;
    let scale = rational::int(permutant.len() as i64);
    let rows = (0..1u64 << m)
        .into_par_iter()
        .map(|v| {
            let bits = unpack_indicator(v, m);
            let phi = Measurement::new(bits.iter().map(|&b| rational::int(b as i64)).collect());
            let code = op.apply(&phi)?;
            let scaled_code = code
                .values()
                .iter()
                .map(|c| {
                    let s = c * &scale;
                    debug_assert!(s.is_integer());
                    rational::format(&s).parse::<i64>().map_err(|e| Error::Malformed(e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(CodeRow {
                vector: v,
                indicator: indicator_string(v, m),
                code,
                scaled_code,
                class: classes.class_of[v as usize],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CodeTable {
        n,
        edge_labels: Graph::complete(n).edge_labels().names().to_vec(),
        scale: permutant.len(),
        class_count: classes.class_count(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    /// First offending indicator vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    fn from_failure(failure: Option<&CodeRow>) -> Self {
        Check { holds: failure.is_none(), counterexample: failure.map(|r| r.indicator.clone()) }
    }
}

/// Two non-isomorphic classes with equivalent codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPair {
    pub classes: [usize; 2],
    pub representatives: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReversalCheck {
    pub holds: bool,
    /// Whether this finding is a pass/fail condition for this `n`.
    pub gated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Findings {
    pub n: usize,
    pub rows: usize,
    pub classes: usize,
    /// Isomorphic subgraphs have equivalent codes.
    pub isomorphic_equivalent: Check,
    /// `F(1 − φ) = 1 − F(φ)`.
    pub complementary: Check,
    /// Non-isomorphic class pairs whose codes are equivalent.
    pub equivalent_non_isomorphic: Vec<ClassPair>,
    /// `F(reversal φ) = reversal F(φ)`.
    pub reversal: ReversalCheck,
    pub passed: bool,
}

pub fn analyze_code_table(table: &CodeTable) -> Result<Findings> {
    let m = table.edge_count();
    let full = (1u64 << m) - 1;
    let mut representatives: BTreeMap<usize, &CodeRow> = BTreeMap::new();
    for row in &table.rows {
        representatives.entry(row.class).or_insert(row);
    }

    let mut failure = None;
    for row in &table.rows {
        if !code_equivalent(&row.code, &representatives[&row.class].code)? {
            failure = Some(row);
            break;
        }
    }
    let isomorphic_equivalent = Check::from_failure(failure);

    let ones = Measurement::new(vec![Rational::one(); m]);
    let complementary = Check::from_failure(table.rows.iter().find(|row| {
        let other = &table.rows[(full ^ row.vector) as usize].code;
        other.values().iter().zip(row.code.values()).zip(ones.values()).any(|((a, b), one)| a != &(one - b))
    }));

    let reps: Vec<&CodeRow> = representatives.values().copied().collect();
    let mut equivalent_non_isomorphic = Vec::new();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            if code_equivalent(&a.code, &b.code)? {
                equivalent_non_isomorphic.push(ClassPair {
                    classes: [a.class, b.class],
                    representatives: [a.indicator.clone(), b.indicator.clone()],
                });
            }
        }
    }

    let reversed = |v: u64| (0..m).fold(0u64, |acc, i| acc | (((v >> i) & 1) << (m - 1 - i)));
    let failure = table.rows.iter().find(|row| table.rows[reversed(row.vector) as usize].code != reversal(&row.code));
    let reversal = ReversalCheck {
        holds: failure.is_none(),
        gated: table.n == 4,
        counterexample: failure.map(|r| r.indicator.clone()),
    };

    let passed = isomorphic_equivalent.holds && complementary.holds && (reversal.holds || !reversal.gated);
    Ok(Findings {
        n: table.n,
        rows: table.rows.len(),
        classes: table.class_count,
        isomorphic_equivalent,
        complementary,
        equivalent_non_isomorphic,
        reversal,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusOrbit {
    pub size: usize,
    pub representative: String,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub total: usize,
    pub counts: BTreeMap<usize, usize>,
    pub orbits: Vec<CensusOrbit>,
}

impl CycleCensus {
    /// Smallest members of the orbits of the given size.
    pub fn representatives(&self, size: usize) -> Vec<&str> {
        self.orbits.iter().filter(|o| o.size == size).map(|o| o.representative.as_str()).collect()
    }

    pub fn orbit_containing(&self, mapping: &str) -> Option<&CensusOrbit> {
        self.orbits.iter().find(|o| o.members.iter().any(|m| m == mapping))
    }
}

/// All α-orbits of maps from the triangle's edges to the hexagon's edges.
pub fn cycle_census() -> Result<CycleCensus> {
    let ctx = hexagon_triangle_context();
    let census = all_orbits(&ctx)?;
    let orbits = census
        .orbits
        .iter()
        .map(|o| {
            let members = o.formatted();
            CensusOrbit { size: members.len(), representative: members[0].clone(), members }
        })
        .collect();
    Ok(CycleCensus { total: census.total, counts: census.counts, orbits })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResponseRow {
    pub input: String,
    pub output: Measurement,
}

/// Output of the operator of the orbit of `mapping` (in the hexagon/triangle
/// setting) on every `0/1` weighting of the hexagon's edges.
pub fn binary_responses(mapping: &str) -> Result<Vec<ResponseRow>> {
    let ctx = hexagon_triangle_context();
    let permutant = orbit(&ctx.parse_mapping(mapping)?, &ctx)?;
    let op = LinearOperator::from_permutant(&permutant)?;
    let m = ctx.x_size();
    (0..1u64 << m)
        .map(|v| {
            let phi = Measurement::new(unpack_indicator(v, m).iter().map(|&b| rational::int(b as i64)).collect());
            Ok(ResponseRow { input: indicator_string(v, m), output: op.apply(&phi)? })
        })
        .collect()
}
