use std::collections::HashMap;

use super::FiniteGroup;
use crate::substitution::Substitution;

/// The eventual value of `a ↦ η(φ^k(a))` along factorial exponents.
///
/// `values[a]` is `g_m(a)` where `g_0 = η`, `g_{k+1}(a)` is the product of
/// `g_k` over the letters of `φ(a)`, the vector sequence `(g_k)` has
/// preperiod `preperiod` and period `period`, and `m` is the least exponent
/// `≥ max(preperiod, 1)` divisible by the period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaImage {
    pub values: Vec<usize>,
    pub preperiod: usize,
    pub period: usize,
    pub exponent: usize,
}

pub fn omega_image(phi: &Substitution, group: &FiniteGroup, eta: &[usize]) -> OmegaImage {
    let step = |g: &[usize]| -> Vec<usize> {
        phi.images()
            .iter()
            .map(|img| img.iter().fold(group.identity(), |acc, &b| group.multiply(acc, g[b as usize])))
            .collect()
    };
    let mut history: Vec<Vec<usize>> = vec![eta.to_vec()];
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::from([(eta.to_vec(), 0)]);
    loop {
        let next = step(history.last().unwrap());
        let k = history.len();
        if let Some(&j) = seen.get(&next) {
            let (preperiod, period) = (j, k - j);
            let start = preperiod.max(1);
            let exponent = start.div_ceil(period) * period;
            let values = if exponent < history.len() {
                history[exponent].clone()
            } else {
                // inside the cycle, so reduce into the recorded range
                history[preperiod + (exponent - preperiod) % period].clone()
            };
            return OmegaImage {
                values,
                preperiod,
                period,
                exponent,
            };
        }
        seen.insert(next.clone(), k);
        history.push(next);
    }
}
