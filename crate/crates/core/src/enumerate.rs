//! Small combinatorial generators shared by the engines and test universes.

/// Every vector `v` with `0 <= v[i] <= caps[i]`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct BoxIter {
    caps: Vec<u32>,
    cur: Vec<u32>,
    started: bool,
    done: bool,
}

impl BoxIter {
    pub fn new(caps: &[u32]) -> Self {
        BoxIter {
            caps: caps.to_vec(),
            cur: vec![0; caps.len()],
            started: false,
            done: false,
        }
    }

    /// Advances in place, returning the next vector without allocating.
    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        for i in (0..self.cur.len()).rev() {
            if self.cur[i] < self.caps[i] {
                self.cur[i] += 1;
                for v in &mut self.cur[i + 1..] {
                    *v = 0;
                }
                return Some(&self.cur);
            }
        }
        self.done = true;
        None
    }
}

/// Lexicographic generator of `v` with `0 <= v[i] <= caps[i]` and
/// `sum(v) == total`.
#[derive(Debug, Clone)]
pub struct BoundedCompositions {
    caps: Vec<u32>,
    /// suffix[i] = caps[i..].sum()
    suffix: Vec<u64>,
    cur: Vec<u32>,
    total: u64,
    started: bool,
    done: bool,
}

impl BoundedCompositions {
    pub fn new(caps: &[u32], total: u64) -> Self {
        let mut suffix = vec![0u64; caps.len() + 1];
        for i in (0..caps.len()).rev() {
            suffix[i] = suffix[i + 1] + caps[i] as u64;
        }
        let done = suffix[0] < total;
        let mut it = BoundedCompositions {
            caps: caps.to_vec(),
            suffix,
            cur: vec![0; caps.len()],
            total,
            started: false,
            done,
        };
        if !done {
            it.fill_min(0, total);
        }
        it
    }

    // Smallest lexicographic completion of positions `from..` summing to `rem`.
    fn fill_min(&mut self, from: usize, mut rem: u64) {
        for i in from..self.caps.len() {
            let v = rem.saturating_sub(self.suffix[i + 1]);
            self.cur[i] = v as u32;
            rem -= v;
        }
    }

    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.cur);
        }
        let n = self.cur.len();
        if n >= 2 {
            let mut prefix: u64 = self.cur[..n - 1].iter().map(|&v| v as u64).sum();
            for i in (0..n - 1).rev() {
                prefix -= self.cur[i] as u64;
                let rem = self.total - prefix;
                let v = self.cur[i] as u64;
                if v < self.caps[i] as u64 && v < rem {
                    self.cur[i] += 1;
                    self.fill_min(i + 1, rem - v - 1);
                    return Some(&self.cur);
                }
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for BoundedCompositions {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_ref().map(<[u32]>::to_vec)
    }
}

impl Iterator for BoxIter {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_ref().map(<[u32]>::to_vec)
    }
}

/// Weak compositions of `n` into exactly `k` parts, lexicographic.
pub fn compositions(n: u32, k: usize) -> BoundedCompositions {
    BoundedCompositions::new(&vec![n; k], n as u64)
}

/// Partitions of `n` (weakly decreasing, positive parts) with at most
/// `max_parts` parts, in reverse lexicographic order.
pub fn partitions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, max_part: u32, max_parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, p, max_parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}
