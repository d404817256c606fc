//! States, component sets, subcubes and Boolean models.
//!
//! A state over `n` components is an `n`-bit word: component `g1` sits in the
//! least significant bit, `gn` in bit `n - 1`. The text form puts `x1`
//! leftmost, so the word `0b110` over three components renders as `"011"`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Largest supported number of components.
pub const MAX_COMPONENTS: usize = 24;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyModel)
    } else if n > MAX_COMPONENTS {
        Err(Error::TooManyComponents {
            n,
            max: MAX_COMPONENTS,
        })
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A point of `{0,1}^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    n: u8,
    bits: u32,
}

impl State {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::InvalidState(format!("{bits:#b}")));
        }
        Ok(State { n: n as u8, bits })
    }

    /// Caller guarantees `1 <= n <= MAX_COMPONENTS` and `bits < 2^n`.
    #[inline]
    pub(crate) fn from_raw(n: usize, bits: u32) -> Self {
        debug_assert!(n <= MAX_COMPONENTS && bits & !full_mask(n) == 0);
        State { n: n as u8, bits }
    }

    /// Builds a state from levels given in component order (`levels[0]` is `x1`).
    pub fn from_levels(levels: &[bool]) -> Result<Self> {
        check_n(levels.len())?;
        let bits = levels
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
        Ok(State::from_raw(levels.len(), bits))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The encoded word; also the index of this state in truth tables and
    /// transition graphs.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Level of component `i` (0-based).
    pub fn get(&self, i: usize) -> bool {
        i < self.n() && self.bits >> i & 1 == 1
    }

    /// The state obtained by flipping every component of `set`.
    pub fn toggled(&self, set: ComponentSet) -> Result<State> {
        if set.is_empty() {
            return Err(Error::EmptyComponentSet);
        }
        set.check_range(self.n())?;
        Ok(State::from_raw(self.n(), self.bits ^ set.bits()))
    }

    pub fn levels(&self) -> Vec<bool> {
        (0..self.n()).map(|i| self.get(i)).collect()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.n() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.n(),
            })
        }
    }
}

/// Renders `bits` over `n` components with `x1` leftmost.
pub fn render_bits(n: usize, bits: u32) -> String {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_bits(self.n(), self.bits))
    }
}

impl FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let levels = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidState(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if levels.is_empty() {
            return Err(Error::InvalidState(s.to_string()));
        }
        State::from_levels(&levels)
    }
}

/// A subset of component indices, stored as a bit mask (bit `i` is `g(i+1)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComponentSet(u32);

impl ComponentSet {
    pub const EMPTY: ComponentSet = ComponentSet(0);

    pub fn from_bits(bits: u32) -> Self {
        ComponentSet(bits)
    }

    /// Every component of an `n`-component model.
    pub fn all(n: usize) -> Self {
        ComponentSet(full_mask(n))
    }

    pub fn singleton(i: usize) -> Self {
        ComponentSet(1u32.checked_shl(i as u32).unwrap_or(0))
    }

    /// Builds a set from 0-based indices, rejecting any index `>= n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, n: usize) -> Result<Self> {
        let mut bits = 0u32;
        for i in indices {
            if i >= n || i >= 32 {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits |= 1 << i;
        }
        Ok(ComponentSet(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 >> i & 1 == 1
    }

    pub fn union(self, other: ComponentSet) -> ComponentSet {
        ComponentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ComponentSet) -> ComponentSet {
        ComponentSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    pub(crate) fn check_range(self, n: usize) -> Result<()> {
        match self.iter().find(|&i| i >= n) {
            Some(index) => Err(Error::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

/// Renders as `{1,3}` with 1-based indices.
impl fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

/// The set of states agreeing with a partial assignment.
///
/// An assignment over no components denotes the whole state space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subcube {
    n: u8,
    fixed: u32,
    values: u32,
}

impl Subcube {
    pub fn whole(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Subcube {
            n: n as u8,
            fixed: 0,
            values: 0,
        })
    }

    /// A subcube from `(index, level)` pairs (0-based indices).
    pub fn new(n: usize, assignment: &[(usize, bool)]) -> Result<Self> {
        let mut cube = Subcube::whole(n)?;
        for &(i, b) in assignment {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            cube.fixed |= 1 << i;
            cube.values = (cube.values & !(1 << i)) | (u32::from(b) << i);
        }
        Ok(cube)
    }

    /// Fixes the components of `set` to the levels they have in `values`.
    pub fn from_masks(n: usize, set: ComponentSet, values: u32) -> Result<Self> {
        check_n(n)?;
        set.check_range(n)?;
        Ok(Subcube {
            n: n as u8,
            fixed: set.bits(),
            values: values & set.bits(),
        })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn fixed(&self) -> ComponentSet {
        ComponentSet(self.fixed)
    }

    /// Assigned levels, as a word restricted to the fixed components.
    pub fn values(&self) -> u32 {
        self.values
    }

    pub fn contains(&self, x: State) -> bool {
        x.n() == self.n() && x.bits() & self.fixed == self.values
    }

    pub fn len(&self) -> usize {
        1usize << (self.n() - self.fixed.count_ones() as usize)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in increasing encoded order.
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        let n = self.n();
        let free = full_mask(n) & !self.fixed;
        let values = self.values;
        SubmaskIter::new(free).map(move |m| State::from_raw(n, values | m))
    }
}

/// Enumerates the submasks of a mask in increasing numeric order, including 0.
pub(crate) struct SubmaskIter {
    mask: u32,
    next: Option<u32>,
}

impl SubmaskIter {
    pub(crate) fn new(mask: u32) -> Self {
        SubmaskIter {
            mask,
            next: Some(0),
        }
    }
}

impl Iterator for SubmaskIter {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // Increment restricted to the bits of `mask`.
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(cur)
    }
}

/// A Boolean function of `n` variables stored as a `2^n`-bit table.
///
/// Bit `k` of the table holds the value at the state whose encoded word is `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: u8,
    words: Vec<u64>,
}

impl TruthTable {
    pub(crate) fn word_count(n: usize) -> usize {
        if n >= 6 {
            1 << (n - 6)
        } else {
            1
        }
    }

    /// Mask of the meaningful bits of a single word (all of them once `n >= 6`).
    pub(crate) fn valid_mask(n: usize) -> u64 {
        if n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << n)) - 1
        }
    }

    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(u32) -> bool + Sync + Send,
    {
        Self::from_fn_with(n, Exec::default(), f)
    }

    pub fn from_fn_with<F>(n: usize, exec: Exec, f: F) -> Result<Self>
    where
        F: Fn(u32) -> bool + Sync + Send,
    {
        check_n(n)?;
        let per_word = 1usize << n.min(6);
        let words = par::map_range(exec, Self::word_count(n), |w| {
            let base = (w * 64) as u32;
            (0..per_word).fold(0u64, |acc, k| acc | (u64::from(f(base + k as u32)) << k))
        });
        Ok(TruthTable { n: n as u8, words })
    }

    /// Builds a table from raw words, clearing bits beyond `2^n`.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        let expected = Self::word_count(n);
        if words.len() != expected {
            return Err(Error::TableSize {
                index: 0,
                expected: 1 << n,
                found: words.len() * 64,
            });
        }
        words[0] &= Self::valid_mask(n);
        Ok(TruthTable { n: n as u8, words })
    }

    /// A table from one bool per state, in encoded order.
    pub fn from_bools(values: &[bool]) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::TableSize {
                index: 0,
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        Self::from_fn_with(n, Exec::Sequential, |x| values[x as usize])
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        check_n(n)?;
        let fill = if value { u64::MAX } else { 0 };
        let mut words = vec![fill; Self::word_count(n)];
        words[0] &= Self::valid_mask(n);
        Ok(TruthTable { n: n as u8, words })
    }

    /// The projection `x -> x_i`.
    pub fn projection(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        Self::from_fn_with(n, Exec::Sequential, |x| x >> i & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(value)` when the table is constant.
    pub fn constant_value(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            c if c == self.len() => Some(true),
            _ => None,
        }
    }
}

/// A Boolean model `S = (S1, ..., Sn)` over named components.
///
/// Every coordinate function is a materialized truth table, so evaluation is a
/// table lookup and two models are equal exactly when they define the same map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanModel {
    names: Vec<String>,
    tables: Vec<TruthTable>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl BooleanModel {
    pub fn new(names: Vec<String>, tables: Vec<TruthTable>) -> Result<Self> {
        let n = names.len();
        check_n(n)?;
        if tables.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: tables.len(),
            });
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !is_identifier(name) {
                return Err(Error::InvalidName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        for (index, t) in tables.iter().enumerate() {
            if t.n() != n {
                return Err(Error::TableSize {
                    index,
                    expected: 1 << n,
                    found: t.len(),
                });
            }
        }
        Ok(BooleanModel { names, tables })
    }

    /// Materializes `f(i, x) = S_i(x)` for every component `i` and state word `x`.
    pub fn from_fn<F>(names: Vec<String>, f: F) -> Result<Self>
    where
        F: Fn(usize, u32) -> bool + Sync + Send,
    {
        let n = names.len();
        check_n(n)?;
        let tables = (0..n)
            .map(|i| TruthTable::from_fn(n, |x| f(i, x)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, tables)
    }

    /// Component names `g1 .. gn`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("g{i}")).collect()
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    /// Number of states, `2^n`.
    pub fn state_count(&self) -> usize {
        1 << self.n()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn tables(&self) -> &[TruthTable] {
        &self.tables
    }

    pub fn table(&self, i: usize) -> &TruthTable {
        &self.tables[i]
    }

    pub fn state(&self, bits: u32) -> Result<State> {
        State::new(self.n(), bits)
    }

    /// `S(x)` on encoded words. `x` must be below `2^n`.
    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.tables
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, t)| acc | (u32::from(t.get(x)) << i))
    }

    pub fn eval(&self, x: State) -> Result<State> {
        x.check_dim(self.n())?;
        Ok(State::from_raw(self.n(), self.apply(x.bits())))
    }

    /// Encoded `S(x)` for every state, indexed by encoded `x`.
    pub fn image_table(&self, exec: Exec) -> Vec<u32> {
        par::map_range(exec, self.state_count(), |x| self.apply(x as u32))
    }

    /// Components whose function disagrees with the current level.
    pub fn updating_set(&self, x: State) -> Result<ComponentSet> {
        x.check_dim(self.n())?;
        Ok(ComponentSet(self.apply(x.bits()) ^ x.bits()))
    }

    pub fn is_fixed_point(&self, x: State) -> Result<bool> {
        Ok(self.updating_set(x)?.is_empty())
    }

    /// One Gauss-Seidel sweep from `x`: components are recomputed in index
    /// order, each seeing the fresh levels of the components before it.
    #[inline]
    pub fn gauss_seidel_apply(&self, x: u32) -> u32 {
        self.tables
            .iter()
            .enumerate()
            .fold(x, |y, (i, t)| (y & !(1 << i)) | (u32::from(t.get(y)) << i))
    }

    /// The Gauss-Seidel model `G` derived from this model, fully materialized.
    pub fn gauss_seidel(&self) -> BooleanModel {
        self.gauss_seidel_with(Exec::default())
    }

    pub fn gauss_seidel_with(&self, exec: Exec) -> BooleanModel {
        let n = self.n();
        let image = par::map_range(exec, self.state_count(), |x| {
            self.gauss_seidel_apply(x as u32)
        });
        let tables = (0..n)
            .map(|i| {
                TruthTable::from_fn_with(n, exec, |x| image[x as usize] >> i & 1 == 1)
                    .expect("dimension already validated")
            })
            .collect();
        BooleanModel {
            names: self.names.clone(),
            tables,
        }
    }

    /// True when `S_i` is the projection on `x_i`.
    pub fn is_input(&self, i: usize) -> Result<bool> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        Ok(self.tables[i] == TruthTable::projection(self.n(), i)?)
    }

    /// Indices of all input components.
    pub fn inputs(&self) -> ComponentSet {
        let bits = (0..self.n())
            .filter(|&i| self.is_input(i).unwrap_or(false))
            .fold(0u32, |acc, i| acc | 1 << i);
        ComponentSet(bits)
    }

    /// The value `S_i` takes on `cube` if it takes only one, `None` otherwise.
    pub fn is_constant_on(&self, i: usize, cube: &Subcube) -> Result<Option<bool>> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            });
        }
        if cube.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: cube.n(),
            });
        }
        let table = &self.tables[i];
        if cube.fixed().is_empty() {
            return Ok(table.constant_value());
        }
        let mut states = cube.states();
        let first = table.get(states.next().expect("subcube is non-empty").bits());
        Ok(states
            .all(|x| table.get(x.bits()) == first)
            .then_some(first))
    }
}
