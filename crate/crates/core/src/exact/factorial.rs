use num_bigint::BigInt;
use num_traits::One;

/// Exact `i!`.
pub fn factorial(i: usize) -> BigInt {
    (2..=i).fold(BigInt::one(), |acc, m| acc * m)
}

/// Exact binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Memo of `0!, 1!, …`, grown on demand to the largest index requested.
#[derive(Clone, Debug)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl Default for FactorialTable {
    fn default() -> Self {
        Self::new()
    }
}

impl FactorialTable {
    pub fn new() -> Self {
        Self {
            table: vec![BigInt::one()],
        }
    }

    pub fn with_capacity(max_index: usize) -> Self {
        let mut t = Self::new();
        t.ensure(max_index);
        t
    }

    fn ensure(&mut self, i: usize) {
        while self.table.len() <= i {
            let m = self.table.len();
            let next = &self.table[m - 1] * m;
            self.table.push(next);
        }
    }

    pub fn get(&mut self, i: usize) -> &BigInt {
        self.ensure(i);
        &self.table[i]
    }

    /// Largest index currently memoized.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        let oracle: u64 = (1..=20u64).product();
        assert_eq!(factorial(20), BigInt::from(oracle));
        assert_eq!(oracle, 2432902008176640000);
    }

    #[test]
    fn table_matches_direct() {
        let mut t = FactorialTable::new();
        assert_eq!(t.get(30), &factorial(30));
        assert_eq!(t.get(7), &factorial(7));
        assert_eq!(t.len(), 31);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
        assert_eq!(binomial(3, 4), BigInt::from(0));
    }
}
