//! Seeded model generators.
//!
//! All randomness comes from [`SplitMix64`], so a generator's output depends
//! only on its [`GenSpec`] and is identical on every platform.
//!
//! SplitMix64 keeps a 64-bit counter `s`. Each draw adds the golden-ratio
//! increment `0x9E3779B97F4A7C15` to `s` and returns the finalized value:
//!
//! ```text
//! z = s
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z ^ (z >> 31)
//! ```
//!
//! Derived draws: `below(b) = (next * b) >> 64` computed in 128 bits, and
//! `unit() = (next >> 11) * 2^-53`. With seed `1234567` the first outputs are
//! `6457827717110365317`, `3203168211198807973`, `9817491932198370423`.

use crate::dynamics::UpdateFamily;
use crate::error::{Error, Result};
use crate::model::{BooleanModel, ComponentSet, TruthTable, MAX_COMPONENTS};

/// The SplitMix64 generator described in the module docs.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        ((u128::from(self.next_u64()) * u128::from(bound)) >> 64) as u64
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    pub fn bit(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// Random DAG with edge probability `density`.
    CircuitFree { density: f64 },
    /// Independent uniform truth tables.
    Arbitrary,
    /// `r` identity components followed by a circuit-free layer.
    WithInputs { r: usize, density: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub seed: u64,
    pub kind: GenKind,
}

impl GenSpec {
    pub fn circuit_free(n: usize, seed: u64, density: f64) -> Self {
        GenSpec {
            n,
            seed,
            kind: GenKind::CircuitFree { density },
        }
    }

    pub fn arbitrary(n: usize, seed: u64) -> Self {
        GenSpec {
            n,
            seed,
            kind: GenKind::Arbitrary,
        }
    }

    pub fn with_inputs(n: usize, r: usize, seed: u64, density: f64) -> Self {
        GenSpec {
            n,
            seed,
            kind: GenKind::WithInputs { r, density },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_COMPONENTS {
            return Err(Error::InvalidGenSpec(format!(
                "n must be in 1..={MAX_COMPONENTS}, got {}",
                self.n
            )));
        }
        let density = match self.kind {
            GenKind::CircuitFree { density } => density,
            GenKind::Arbitrary => 0.0,
            GenKind::WithInputs { r, density } => {
                if r == 0 || r > self.n {
                    return Err(Error::InvalidGenSpec(format!(
                        "r must be in 1..={}, got {r}",
                        self.n
                    )));
                }
                density
            }
        };
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidGenSpec(format!(
                "density must be in [0, 1], got {density}"
            )));
        }
        Ok(())
    }
}

/// Random function of the components in `preds`: a uniform truth table over a
/// random non-empty subset of them, or a random constant if `preds` is empty.
fn random_table(rng: &mut SplitMix64, n: usize, preds: &[usize]) -> Result<TruthTable> {
    if preds.is_empty() {
        return TruthTable::constant(n, rng.bit());
    }
    let mut args: Vec<usize> = preds.iter().copied().filter(|_| rng.bit()).collect();
    if args.is_empty() {
        args.push(preds[rng.below(preds.len() as u64) as usize]);
    }
    let rows = 1usize << args.len();
    let words: Vec<u64> = (0..rows.div_ceil(64)).map(|_| rng.next_u64()).collect();
    TruthTable::from_fn(n, |x| {
        let row = args
            .iter()
            .enumerate()
            .fold(0usize, |acc, (b, &j)| acc | ((x as usize >> j & 1) << b));
        words[row / 64] >> (row % 64) & 1 == 1
    })
}

/// Tables for the components in `order`, each drawing predecessors from
/// `sources` plus the components earlier in `order`.
fn layered(
    rng: &mut SplitMix64,
    n: usize,
    sources: &[usize],
    order: &[usize],
    density: f64,
    tables: &mut [Option<TruthTable>],
) -> Result<()> {
    let mut pool: Vec<usize> = sources.to_vec();
    for &i in order {
        let preds: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|_| rng.chance(density))
            .collect();
        tables[i] = Some(random_table(rng, n, &preds)?);
        pool.push(i);
    }
    Ok(())
}

fn assemble(n: usize, tables: Vec<Option<TruthTable>>) -> Result<BooleanModel> {
    let tables = tables
        .into_iter()
        .map(|t| t.expect("every component drawn"))
        .collect();
    BooleanModel::new(BooleanModel::default_names(n), tables)
}

/// A model whose regulatory graph has no circuit.
pub fn gen_circuit_free(spec: &GenSpec) -> Result<BooleanModel> {
    spec.validate()?;
    let GenKind::CircuitFree { density } = spec.kind else {
        return Err(Error::InvalidGenSpec("expected a circuit-free spec".into()));
    };
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut tables = vec![None; n];
    layered(&mut rng, n, &[], &order, density, &mut tables)?;
    assemble(n, tables)
}

/// A model whose first `r` components are inputs and whose only circuits are
/// their self-loops. Returns the model and its input set.
pub fn gen_with_inputs(spec: &GenSpec) -> Result<(BooleanModel, ComponentSet)> {
    spec.validate()?;
    let GenKind::WithInputs { r, density } = spec.kind else {
        return Err(Error::InvalidGenSpec("expected an inputs spec".into()));
    };
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    let mut tables: Vec<Option<TruthTable>> = (0..r)
        .map(|i| TruthTable::projection(n, i).map(Some))
        .collect::<Result<_>>()?;
    tables.resize(n, None);
    let inputs: Vec<usize> = (0..r).collect();
    let mut order: Vec<usize> = (r..n).collect();
    rng.shuffle(&mut order);
    layered(&mut rng, n, &inputs, &order, density, &mut tables)?;
    Ok((
        assemble(n, tables)?,
        ComponentSet::from_bits((1u32 << r) - 1),
    ))
}

/// Independent uniformly random truth tables.
pub fn gen_arbitrary(spec: &GenSpec) -> Result<BooleanModel> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    let words = TruthTable::word_count(n);
    let tables = (0..n)
        .map(|_| TruthTable::from_words(n, (0..words).map(|_| rng.next_u64()).collect()))
        .collect::<Result<Vec<_>>>()?;
    BooleanModel::new(BooleanModel::default_names(n), tables)
}

/// Dispatches on `spec.kind`; the component set is empty unless the kind has
/// inputs.
pub fn generate(spec: &GenSpec) -> Result<(BooleanModel, ComponentSet)> {
    match spec.kind {
        GenKind::CircuitFree { .. } => Ok((gen_circuit_free(spec)?, ComponentSet::EMPTY)),
        GenKind::Arbitrary => Ok((gen_arbitrary(spec)?, ComponentSet::EMPTY)),
        GenKind::WithInputs { .. } => gen_with_inputs(spec),
    }
}

/// The two-component example with `S1 = S2 = (x1 & x2) | (!x1 & !x2)`:
/// synchronously simple, asynchronously not.
pub fn fig1_model() -> BooleanModel {
    let names = vec!["g1".to_string(), "g2".to_string()];
    BooleanModel::from_fn(names, |_, x| x == 0b00 || x == 0b11).expect("two components")
}

/// A random valid update family: between 1 and `2n` random non-empty parts,
/// duplicates dropped, then singletons for any uncovered component.
pub fn gen_family(n: usize, seed: u64) -> Result<UpdateFamily> {
    if n == 0 || n > MAX_COMPONENTS {
        return Err(Error::InvalidGenSpec(format!(
            "n must be in 1..={MAX_COMPONENTS}, got {n}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let full = (1u32 << n) - 1;
    let k = 1 + rng.below(2 * n as u64);
    let mut parts: Vec<ComponentSet> = Vec::new();
    for _ in 0..k {
        let mut mask = 0;
        while mask == 0 {
            mask = rng.next_u64() as u32 & full;
        }
        let part = ComponentSet::from_bits(mask);
        if !parts.contains(&part) {
            parts.push(part);
        }
    }
    let covered = parts.iter().fold(0u32, |acc, p| acc | p.bits());
    parts.extend(
        (0..n)
            .filter(|i| covered >> i & 1 == 0)
            .map(ComponentSet::singleton),
    );
    Ok(UpdateFamily::new(parts, n)?)
}
