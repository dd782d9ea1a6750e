use std::fmt;

use crate::cyclo::{CycMatrix, CycScalar};
use crate::mtc::{validate, Category, DataError, FusionData, Label, ModularDatum, MtcError};

/// The contents of a category file, before any axiom is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCategoryFile {
    pub name: String,
    pub conductor: u32,
    pub rank: usize,
    pub units: Vec<Label>,
    /// `dual[i]` is the dual label of `i`.
    pub dual: Vec<Label>,
    /// Nonzero multiplicities `(i, j, k, N_{ij}^k)`, sorted.
    pub fusion: Vec<(Label, Label, Label, u32)>,
    pub twist: Vec<CycScalar>,
    pub dim: Vec<CycScalar>,
    /// Row-major `rank × rank` entries, when the file supplies the S-matrix.
    pub smatrix: Option<Vec<CycScalar>>,
}

impl RawCategoryFile {
    pub fn to_data(&self) -> Result<(FusionData, ModularDatum), DataError> {
        let fusion = FusionData::new(
            self.rank,
            self.units.clone(),
            self.dual.clone(),
            self.fusion.iter().copied(),
        )?;
        let s_tilde = match &self.smatrix {
            Some(entries) => Some(
                CycMatrix::new(self.rank, self.rank, entries.clone()).map_err(|_| {
                    DataError::WrongLength {
                        what: "smatrix",
                        expected: self.rank * self.rank,
                        found: entries.len(),
                    }
                })?,
            ),
            None => None,
        };
        Ok((
            fusion,
            ModularDatum {
                twist: self.twist.clone(),
                qdim: self.dim.clone(),
                s_tilde,
            },
        ))
    }

    /// Builds and validates the category.
    pub fn to_category(&self) -> Result<Category, MtcError> {
        let (fusion, data) = self.to_data()?;
        Ok(validate(fusion, data)?)
    }

    /// Canonical text form; parsing it gives back an equal value.
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    fn scalar_text(&self, x: &CycScalar) -> String {
        match x.embed(self.conductor) {
            Ok(e) => e.to_string(),
            // Scalars outside the file field cannot be written faithfully.
            Err(_) => panic!(
                "scalar of conductor {} does not live in Q(zeta_{})",
                x.conductor(),
                self.conductor
            ),
        }
    }
}

impl fmt::Display for RawCategoryFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mtc {}", self.name)?;
        writeln!(f, "conductor {}", self.conductor)?;
        writeln!(f, "rank {}", self.rank)?;
        let units: Vec<String> = self.units.iter().map(ToString::to_string).collect();
        writeln!(f, "unit {}", units.join(","))?;
        for (i, d) in self.dual.iter().enumerate() {
            writeln!(f, "dual {i}->{d}")?;
        }
        let mut fusion = self.fusion.clone();
        fusion.sort_unstable();
        for (i, j, k, m) in fusion {
            if m != 0 {
                writeln!(f, "fusion {i} {j} {k} {m}")?;
            }
        }
        for (i, t) in self.twist.iter().enumerate() {
            writeln!(f, "twist {i} {}", self.scalar_text(t))?;
        }
        for (i, d) in self.dim.iter().enumerate() {
            writeln!(f, "dim {i} {}", self.scalar_text(d))?;
        }
        if let Some(s) = &self.smatrix {
            for (idx, x) in s.iter().enumerate() {
                writeln!(
                    f,
                    "smatrix {} {} {}",
                    idx / self.rank,
                    idx % self.rank,
                    self.scalar_text(x)
                )?;
            }
        }
        Ok(())
    }
}
