use super::{DataError, Label};

/// Fusion rules of a semisimple category with a (possibly non-simple) unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionData {
    rank: usize,
    units: Vec<Label>,
    dual: Vec<Label>,
    /// `N_{ij}^k` at `(i * rank + j) * rank + k`.
    table: Vec<u32>,
}

impl FusionData {
    /// Builds fusion data from explicit nonzero multiplicities `(i, j, k, N_{ij}^k)`.
    /// Only shapes and label ranges are checked here; the axioms are checked by
    /// [`validate`](super::validate).
    pub fn new(
        rank: usize,
        units: Vec<Label>,
        dual: Vec<Label>,
        entries: impl IntoIterator<Item = (Label, Label, Label, u32)>,
    ) -> Result<Self, DataError> {
        if rank == 0 {
            return Err(DataError::EmptyLabelSet);
        }
        if dual.len() != rank {
            return Err(DataError::WrongLength {
                what: "dual",
                expected: rank,
                found: dual.len(),
            });
        }
        if units.is_empty() {
            return Err(DataError::NoUnit);
        }
        let check = |l: Label| {
            if l < rank {
                Ok(())
            } else {
                Err(DataError::LabelOutOfRange { label: l, rank })
            }
        };
        for &u in &units {
            check(u)?;
        }
        for &d in &dual {
            check(d)?;
        }
        let mut table = vec![0u32; rank * rank * rank];
        for (i, j, k, m) in entries {
            check(i)?;
            check(j)?;
            check(k)?;
            table[(i * rank + j) * rank + k] = m;
        }
        let mut units = units;
        units.sort_unstable();
        units.dedup();
        Ok(FusionData {
            rank,
            units,
            dual,
            table,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn units(&self) -> &[Label] {
        &self.units
    }

    pub fn is_unit(&self, l: Label) -> bool {
        self.units.binary_search(&l).is_ok()
    }

    pub fn dual(&self, l: Label) -> Label {
        self.dual[l]
    }

    pub fn duals(&self) -> &[Label] {
        &self.dual
    }

    /// `N_{ij}^k`.
    #[inline]
    pub fn n(&self, i: Label, j: Label, k: Label) -> u32 {
        self.table[(i * self.rank + j) * self.rank + k]
    }

    /// All nonzero `(i, j, k, N_{ij}^k)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (Label, Label, Label, u32)> + '_ {
        let r = self.rank;
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(move |(idx, &m)| (idx / (r * r), (idx / r) % r, idx % r, m))
    }

    /// The fusion matrix `(N_i)_{jk} = N_{ij}^k`.
    pub fn fusion_matrix(&self, i: Label) -> Vec<Vec<u64>> {
        (0..self.rank)
            .map(|j| (0..self.rank).map(|k| self.n(i, j, k) as u64).collect())
            .collect()
    }
}

/// Dense non-negative integer matrix helpers used for fusion-rule bookkeeping.
pub(crate) mod intmat {
    pub type IntMat = Vec<Vec<u64>>;

    pub fn mul(a: &IntMat, b: &IntMat) -> IntMat {
        let n = a.len();
        let m = b.first().map_or(0, Vec::len);
        let mut out = vec![vec![0u64; m]; n];
        for i in 0..n {
            for (t, &x) in a[i].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for j in 0..m {
                    out[i][j] += x * b[t][j];
                }
            }
        }
        out
    }

    pub fn add_assign(a: &mut IntMat, b: &IntMat, scale: u64) {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                *x += scale * y;
            }
        }
    }
}
