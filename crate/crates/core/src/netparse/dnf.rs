//! Canonical text for models: each rule is a sum of products read off the
//! truth table.
//!
//! A function is first restricted to the variables it actually depends on.
//! Up to [`EXACT_SUPPORT`] such variables, the rule is a minimum-size cover by
//! prime implicants (Quine-McCluskey followed by a bounded branch-and-bound
//! cover search). Beyond that, the rule is the disjoint cube cover obtained by
//! Shannon expansion on the highest variable. Terms are sorted as strings.

use std::collections::HashSet;

use crate::model::{BooleanModel, TruthTable};

/// Largest support for which prime implicants are enumerated.
const EXACT_SUPPORT: usize = 12;

/// Node budget of the cover search; past it the best cover found so far is kept.
const COVER_BUDGET: usize = 200_000;

/// A product term over reduced variables: `care` bits are literals, `value`
/// gives their polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cube {
    care: u32,
    value: u32,
}

impl Cube {
    fn covers(&self, m: u32) -> bool {
        m & self.care == self.value
    }
}

pub fn serialize_model(model: &BooleanModel) -> String {
    let mut out = String::new();
    for i in 0..model.n() {
        out.push_str(model.name(i));
        out.push_str(" : ");
        out.push_str(&rule_text(model, model.table(i)));
        out.push('\n');
    }
    out
}

fn depends_on(table: &TruthTable, j: usize) -> bool {
    let n = table.n();
    (0..1u32 << n)
        .filter(|x| x >> j & 1 == 0)
        .any(|x| table.get(x) != table.get(x | 1 << j))
}

fn rule_text(model: &BooleanModel, table: &TruthTable) -> String {
    if let Some(c) = table.constant_value() {
        return if c { "1" } else { "0" }.to_string();
    }
    let support: Vec<usize> = (0..model.n()).filter(|&j| depends_on(table, j)).collect();
    let k = support.len();
    // Reduced table over the support variables, others pinned to 0.
    let reduced: Vec<bool> = (0..1u32 << k)
        .map(|r| {
            let x = support
                .iter()
                .enumerate()
                .fold(0u32, |acc, (b, &j)| acc | ((r >> b & 1) << j));
            table.get(x)
        })
        .collect();
    let cubes = if k <= EXACT_SUPPORT {
        minimum_cover(&reduced, k)
    } else {
        let mut cubes = Vec::new();
        shannon(&reduced, k, Cube { care: 0, value: 0 }, &mut cubes);
        cubes
    };
    let mut terms: Vec<String> = cubes
        .iter()
        .map(|c| {
            let lits: Vec<String> = (0..k)
                .filter(|b| c.care >> b & 1 == 1)
                .map(|b| {
                    let name = model.name(support[b]);
                    if c.value >> b & 1 == 1 {
                        name.to_string()
                    } else {
                        format!("!{name}")
                    }
                })
                .collect();
            lits.join(" & ")
        })
        .collect();
    terms.sort();
    if terms.len() == 1 {
        return terms.pop().expect("one term");
    }
    terms
        .iter()
        .map(|t| {
            if t.contains('&') {
                format!("({t})")
            } else {
                t.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Disjoint cover by recursive cofactoring on the highest variable.
fn shannon(f: &[bool], k: usize, prefix: Cube, out: &mut Vec<Cube>) {
    if f.iter().all(|&b| !b) {
        return;
    }
    if f.iter().all(|&b| b) {
        out.push(prefix);
        return;
    }
    let v = k - 1;
    let (f0, f1) = f.split_at(f.len() / 2);
    if f0 == f1 {
        shannon(f0, v, prefix, out);
        return;
    }
    let bit = 1 << v;
    shannon(
        f0,
        v,
        Cube {
            care: prefix.care | bit,
            value: prefix.value,
        },
        out,
    );
    shannon(
        f1,
        v,
        Cube {
            care: prefix.care | bit,
            value: prefix.value | bit,
        },
        out,
    );
}

/// Quine-McCluskey prime implicants of the on-set.
fn prime_implicants(f: &[bool], k: usize) -> Vec<Cube> {
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut level: HashSet<Cube> = (0..f.len() as u32)
        .filter(|&m| f[m as usize])
        .map(|m| Cube {
            care: full,
            value: m,
        })
        .collect();
    let mut primes = Vec::new();
    while !level.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for c in &level {
            for b in 0..k {
                let bit = 1u32 << b;
                if c.care & bit == 0 || c.value & bit != 0 {
                    continue;
                }
                let partner = Cube {
                    care: c.care,
                    value: c.value | bit,
                };
                if level.contains(&partner) {
                    merged.insert(*c);
                    merged.insert(partner);
                    next.insert(Cube {
                        care: c.care & !bit,
                        value: c.value,
                    });
                }
            }
        }
        primes.extend(level.iter().filter(|c| !merged.contains(c)).copied());
        level = next;
    }
    primes.sort();
    primes
}

fn minimum_cover(f: &[bool], k: usize) -> Vec<Cube> {
    let primes = prime_implicants(f, k);
    let minterms: Vec<u32> = (0..f.len() as u32).filter(|&m| f[m as usize]).collect();
    // covering[t] = indices of primes covering minterm t.
    let covering: Vec<Vec<usize>> = minterms
        .iter()
        .map(|&m| (0..primes.len()).filter(|&p| primes[p].covers(m)).collect())
        .collect();

    let mut chosen = vec![false; primes.len()];
    for c in &covering {
        if c.len() == 1 {
            chosen[c[0]] = true;
        }
    }
    let remaining: Vec<usize> = (0..minterms.len())
        .filter(|&t| !covering[t].iter().any(|&p| chosen[p]))
        .collect();

    if !remaining.is_empty() {
        let mut search = CoverSearch {
            covering: &covering,
            best: greedy(&covering, &remaining, primes.len()),
            nodes: 0,
        };
        let mut picked = Vec::new();
        search.run(&remaining, &mut picked);
        for p in search.best {
            chosen[p] = true;
        }
    }
    (0..primes.len())
        .filter(|&p| chosen[p])
        .map(|p| primes[p])
        .collect()
}

/// Greedy cover: repeatedly pick the prime covering most uncovered minterms,
/// smallest index on ties.
fn greedy(covering: &[Vec<usize>], remaining: &[usize], primes: usize) -> Vec<usize> {
    let mut uncovered: Vec<usize> = remaining.to_vec();
    let mut picked = Vec::new();
    while !uncovered.is_empty() {
        let mut gain = vec![0usize; primes];
        for &t in &uncovered {
            for &p in &covering[t] {
                gain[p] += 1;
            }
        }
        let best = (0..primes)
            .max_by_key(|&p| (gain[p], std::cmp::Reverse(p)))
            .expect("at least one prime");
        picked.push(best);
        uncovered.retain(|&t| !covering[t].contains(&best));
    }
    picked.sort_unstable();
    picked
}

struct CoverSearch<'a> {
    covering: &'a [Vec<usize>],
    best: Vec<usize>,
    nodes: usize,
}

impl CoverSearch<'_> {
    fn run(&mut self, uncovered: &[usize], picked: &mut Vec<usize>) {
        self.nodes += 1;
        if self.nodes > COVER_BUDGET || picked.len() + 1 >= self.best.len() && !uncovered.is_empty()
        {
            return;
        }
        if uncovered.is_empty() {
            if picked.len() < self.best.len() {
                let mut b = picked.clone();
                b.sort_unstable();
                self.best = b;
            }
            return;
        }
        // Branch on the minterm with the fewest covering primes.
        let &pivot = uncovered
            .iter()
            .min_by_key(|&&t| (self.covering[t].len(), t))
            .expect("non-empty");
        for &p in &self.covering[pivot] {
            let rest: Vec<usize> = uncovered
                .iter()
                .copied()
                .filter(|&t| !self.covering[t].contains(&p))
                .collect();
            picked.push(p);
            self.run(&rest, picked);
            picked.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netparse::parse_model;

    fn cover_size(f: &[bool], k: usize) -> usize {
        minimum_cover(f, k).len()
    }

    #[test]
    fn constant_rules() {
        let m = parse_model("a : 1").unwrap();
        assert_eq!(serialize_model(&m), "a : 1\n");
        let m = parse_model("a : a & !a").unwrap();
        assert_eq!(serialize_model(&m), "a : 0\n");
    }

    #[test]
    fn fig1_canonical_text() {
        let m = parse_model("a : (a & b) | (!a & !b)\nb : (a & b) | (!a & !b)").unwrap();
        let text = serialize_model(&m);
        assert_eq!(text, "a : (!a & !b) | (a & b)\nb : (!a & !b) | (a & b)\n");
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn irrelevant_variables_are_dropped() {
        let m = parse_model("a : b | (b & c) | (c & !c)\nb : 0\nc : c").unwrap();
        assert_eq!(serialize_model(&m), "a : b\nb : 0\nc : c\n");
    }

    #[test]
    fn consensus_term_is_not_emitted() {
        // ab | !ac | bc: the consensus bc is redundant.
        let m = parse_model("a : (a & b) | (!a & c) | (b & c)\nb : b\nc : c").unwrap();
        assert_eq!(
            serialize_model(&m).lines().next(),
            Some("a : (!a & c) | (a & b)")
        );
    }

    #[test]
    fn cyclic_cover_is_minimum() {
        // The classic cyclic function sum m(0,1,2,5,6,7) over 3 variables has
        // six primes and no essential one; its minimum cover has 3 terms.
        let on = [0, 1, 2, 5, 6, 7];
        let f: Vec<bool> = (0..8).map(|m| on.contains(&m)).collect();
        assert_eq!(prime_implicants(&f, 3).len(), 6);
        assert_eq!(cover_size(&f, 3), 3);
    }

    #[test]
    fn parity_needs_all_minterms() {
        let f: Vec<bool> = (0..16u32).map(|m| m.count_ones() % 2 == 1).collect();
        assert_eq!(cover_size(&f, 4), 8);
    }

    #[test]
    fn shannon_cover_is_exact() {
        let f: Vec<bool> = (0..64u32).map(|m| (m * 37 + 11) % 7 < 3).collect();
        let mut cubes = Vec::new();
        shannon(&f, 6, Cube { care: 0, value: 0 }, &mut cubes);
        for m in 0..64u32 {
            let hits = cubes.iter().filter(|c| c.covers(m)).count();
            assert_eq!(hits, usize::from(f[m as usize]), "minterm {m}");
        }
    }

    #[test]
    fn wide_support_round_trips() {
        // 13 relevant variables forces the Shannon route.
        let names: Vec<String> = (0..13).map(|i| format!("x{i}")).collect();
        let m = BooleanModel::from_fn(names, |i, x| {
            if i == 0 {
                x.count_ones() % 3 == 0
            } else {
                x >> i & 1 == 1
            }
        })
        .unwrap();
        let back = parse_model(&serialize_model(&m)).unwrap();
        assert_eq!(back, m);
    }
}
