//! Lex-leader test for a family of subsets under relabelling of the ground set.
//!
//! Families are compared as increasing sequences of bit masks (colex order of
//! the members). A family is canonical when no permutation of the ground set
//! maps it to a lexicographically smaller sequence. The minimal image is built
//! one new label at a time: once labels `0..t` are placed, every member whose
//! preimage uses only those labels has a known image, and all such images
//! precede every member still involving a later label. That makes each step a
//! comparison of one chunk of the image against the members of the original
//! family whose top bit is `t`.

/// True when `family` (strictly increasing masks over `n` points) is its own
/// minimal image under the symmetric group on the ground set.
pub fn is_canonical(n: u32, family: &[u64]) -> bool {
    debug_assert!(family.windows(2).all(|w| w[0] < w[1]));
    if family.len() <= 1 {
        // a single set is minimal iff it is {1..k}
        return family.first().is_none_or(|&a| a == low_bits(a.count_ones()));
    }
    let n = n as usize;
    let mut chunks = vec![(0usize, 0usize); n];
    let mut start = 0;
    for (t, chunk) in chunks.iter_mut().enumerate() {
        let bound = if t + 1 >= 64 { u64::MAX } else { (1u64 << (t + 1)) - 1 };
        let end = start + family[start..].iter().take_while(|&&a| a <= bound).count();
        *chunk = (start, end);
        start = end;
    }
    let classes = twin_classes(n, family);
    let mut search = Canon {
        family,
        chunks,
        classes,
        label: vec![usize::MAX; n],
        used: 0,
        scratch: Vec::new(),
    };
    !search.smaller_image(0)
}

fn low_bits(k: u32) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn swap_bits(a: u64, x: usize, y: usize) -> u64 {
    let bx = a >> x & 1;
    let by = a >> y & 1;
    if bx == by {
        a
    } else {
        a ^ (1 << x) ^ (1 << y)
    }
}

/// `classes[x]` is the least `y` such that the transposition `(x y)` fixes the family.
fn twin_classes(n: usize, family: &[u64]) -> Vec<usize> {
    let mut classes: Vec<usize> = (0..n).collect();
    for y in 0..n {
        for x in 0..y {
            if classes[x] != x {
                continue;
            }
            let fixed = family
                .iter()
                .all(|&a| family.binary_search(&swap_bits(a, x, y)).is_ok());
            if fixed {
                classes[y] = x;
                break;
            }
        }
    }
    classes
}

struct Canon<'a> {
    family: &'a [u64],
    chunks: Vec<(usize, usize)>,
    classes: Vec<usize>,
    /// new label of each old element, `usize::MAX` while unassigned
    label: Vec<usize>,
    used: u64,
    scratch: Vec<u64>,
}

impl Canon<'_> {
    fn smaller_image(&mut self, t: usize) -> bool {
        let n = self.label.len();
        if t == n {
            return false;
        }
        let mut tried_classes = 0u64;
        for x in 0..n {
            if self.used >> x & 1 == 1 || tried_classes >> self.classes[x] & 1 == 1 {
                continue;
            }
            tried_classes |= 1 << self.classes[x];
            self.label[x] = t;
            self.used |= 1 << x;
            let step = self.compare_chunk(t, x);
            let found = match step {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => self.smaller_image(t + 1),
            };
            self.used &= !(1 << x);
            self.label[x] = usize::MAX;
            if found {
                return true;
            }
        }
        false
    }

    /// Compares the image members completed by placing `x` at label `t`
    /// against the original members whose top label is `t`.
    fn compare_chunk(&mut self, t: usize, x: usize) -> std::cmp::Ordering {
        let mut images = std::mem::take(&mut self.scratch);
        images.clear();
        for &a in self.family {
            if a >> x & 1 == 1 && a & !self.used == 0 {
                let mut img = 0u64;
                let mut rest = a;
                while rest != 0 {
                    let e = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    img |= 1 << self.label[e];
                }
                images.push(img);
            }
        }
        images.sort_unstable();
        let (lo, hi) = self.chunks[t];
        let original = &self.family[lo..hi];
        let common = images.len().min(original.len());
        // past a common prefix, the longer image chunk has a set with top
        // label t where the original already uses a later label
        let ord = images[..common]
            .cmp(&original[..common])
            .then(original.len().cmp(&images.len()));
        self.scratch = images;
        ord
    }
}
