//! Brute-force design checks on finite discrete spaces.
//!
//! Subsets of `{0..n-1}` are bitmasks, so `n` is capped at 63.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_integer::binomial;
use thiserror::Error;

use crate::designs::DesignType;

pub const MAX_POINTS: u32 = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("ground size {0} is outside 2..={MAX_POINTS}")]
    GroundSize(u32),
    #[error("block {block} has point {point} outside 0..{n}")]
    PointOutOfRange { block: usize, point: u32, n: u32 },
    #[error("block {0} is listed twice")]
    DuplicateBlock(usize),
    #[error("sizes must satisfy 1 <= C_size <= D_size <= n (got C_size={c_size}, D_size={d_size}, n={n})")]
    Sizes { c_size: u32, d_size: u32, n: u32 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A block family on the discrete space `{0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteInstance {
    n: u32,
    blocks: Vec<u64>,
    c_size: u32,
    d_size: u32,
}

fn mask(points: &[u32]) -> u64 {
    points.iter().fold(0, |m, &p| m | 1 << p)
}

fn points_of(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

impl FiniteInstance {
    pub fn new(
        n: u32,
        blocks: Vec<Vec<u32>>,
        c_size: u32,
        d_size: u32,
    ) -> Result<FiniteInstance, InstanceError> {
        if !(2..=MAX_POINTS).contains(&n) {
            return Err(InstanceError::GroundSize(n));
        }
        if !(1 <= c_size && c_size <= d_size && d_size <= n) {
            return Err(InstanceError::Sizes { c_size, d_size, n });
        }
        let mut masks = Vec::with_capacity(blocks.len());
        for (i, block) in blocks.iter().enumerate() {
            if let Some(&point) = block.iter().find(|&&p| p >= n) {
                return Err(InstanceError::PointOutOfRange { block: i, point, n });
            }
            let m = mask(block);
            if masks.contains(&m) {
                return Err(InstanceError::DuplicateBlock(i));
            }
            masks.push(m);
        }
        Ok(FiniteInstance { n, blocks: masks, c_size, d_size })
    }

    /// Every `k`-subset of `{0..n-1}` as a block, probed by `t`-subsets.
    pub fn all_k_subsets(n: u32, k: u32, t: u32) -> Result<FiniteInstance, InstanceError> {
        let blocks = (0..n).combinations(k as usize).collect();
        FiniteInstance::new(n, blocks, t, k)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c_size(&self) -> u32 {
        self.c_size
    }

    pub fn d_size(&self) -> u32 {
        self.d_size
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        self.blocks.iter().map(|&m| points_of(m)).collect()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn with_c_size(&self, c_size: u32) -> Result<FiniteInstance, InstanceError> {
        FiniteInstance::new(self.n, self.blocks(), c_size, self.d_size)
    }

    /// Drops the `i`-th block.
    pub fn without_block(&self, i: usize) -> FiniteInstance {
        let mut out = self.clone();
        out.blocks.remove(i);
        out
    }
}

impl fmt::Display for FiniteInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "c_size: {}", self.c_size)?;
        writeln!(f, "d_size: {}", self.d_size)?;
        for block in self.blocks() {
            writeln!(f, "{}", block.iter().join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FiniteInstance {
    type Err = InstanceError;

    /// Reads `n:`, `c_size:` and `d_size:` header lines followed by one block
    /// per line. Blank lines and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut header = [None::<u32>; 3];
        let mut blocks = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| InstanceError::Parse { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                let slot = match key.trim() {
                    "n" => 0,
                    "c_size" => 1,
                    "d_size" => 2,
                    other => return Err(err(format!("unknown key `{other}`"))),
                };
                if !blocks.is_empty() {
                    return Err(err("header after blocks".into()));
                }
                let v = value.trim().parse().map_err(|_| err(format!("bad number `{}`", value.trim())))?;
                if header[slot].replace(v).is_some() {
                    return Err(err(format!("duplicate key `{}`", key.trim())));
                }
                continue;
            }
            let block = line
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| err(format!("bad point `{}`", p.trim()))))
                .collect::<Result<Vec<_>, _>>()?;
            blocks.push(block);
        }
        let missing = |name: &str| InstanceError::Parse { line: 0, message: format!("missing `{name}`") };
        let n = header[0].ok_or_else(|| missing("n"))?;
        let c = header[1].ok_or_else(|| missing("c_size"))?;
        let d = header[2].ok_or_else(|| missing("d_size"))?;
        FiniteInstance::new(n, blocks, c, d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteResult {
    /// Every probe lies in exactly this many blocks.
    Exactly(u64),
    /// Two probes with different containment counts.
    NonUniform {
        first: (Vec<u32>, u64),
        second: (Vec<u32>, u64),
    },
}

impl fmt::Display for BruteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruteResult::Exactly(l) => write!(f, "Exactly({l})"),
            BruteResult::NonUniform { first, second } => write!(
                f,
                "NonUniform({{{}}} in {}, {{{}}} in {})",
                first.0.iter().join(","),
                first.1,
                second.0.iter().join(","),
                second.1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("block {{{}}} does not match the block shape ({size} points, complement {cosize})", .block.iter().join(","))]
pub struct BlockShapeError {
    pub block: Vec<u32>,
    pub size: u32,
    pub cosize: u32,
}

/// Counts, for every copy of `C`, the blocks containing it.
///
/// Finite spaces are discrete, so homeomorphism is equinumerosity. Types with
/// the complement conditions compare complement sizes as well, which in a
/// fixed ground set is implied by the sizes.
pub fn brute_lambda(inst: &FiniteInstance, ty: DesignType) -> Result<BruteResult, BlockShapeError> {
    let n = inst.n;
    let block_ok = |b: u64| {
        let size = b.count_ones();
        size == inst.d_size && (!ty.requires_complement_match() || n - size == n - inst.d_size)
    };
    if let Some(&bad) = inst.blocks.iter().find(|&&b| !block_ok(b)) {
        return Err(BlockShapeError { block: points_of(bad), size: inst.d_size, cosize: n - inst.d_size });
    }

    let is_probe = |e: u64| {
        let size = e.count_ones();
        size == inst.c_size && (!ty.restricts_probes() || n - size == n - inst.c_size)
    };
    let mut first: Option<(u64, u64)> = None;
    for probe in (0..n).combinations(inst.c_size as usize).map(|p| mask(&p)) {
        if !is_probe(probe) {
            continue;
        }
        let count = inst.blocks.iter().filter(|&&b| b & probe == probe).count() as u64;
        match first {
            None => first = Some((probe, count)),
            Some((p, c)) if c != count => {
                return Ok(BruteResult::NonUniform {
                    first: (points_of(p), c),
                    second: (points_of(probe), count),
                })
            }
            Some(_) => {}
        }
    }
    Ok(BruteResult::Exactly(first.map_or(0, |(_, c)| c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("need 1 <= t < k < n (got n={n}, k={k}, t={t})")]
pub struct ParameterError {
    pub n: u64,
    pub k: u64,
    pub t: u64,
}

/// Lambda of the design formed by all `k`-subsets of an `n`-set, probed by `t`-subsets.
pub fn all_k_subsets_lambda(n: u64, k: u64, t: u64) -> Result<u64, ParameterError> {
    if !(1 <= t && t < k && k < n) {
        return Err(ParameterError { n, k, t });
    }
    Ok(binomial(n - t, k - t))
}
