//! Fixed-width bitsets for worlds and atoms.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

macro_rules! bitset {
    ($name:ident, $what:literal) => {
        #[doc = concat!("A set of ", $what, " indices below 64.")]
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: $name = $name(0);

            pub fn singleton(i: usize) -> Self {
                $name(1u64 << i)
            }

            /// `{0, .., n-1}`
            pub fn full(n: usize) -> Self {
                if n >= 64 {
                    $name(u64::MAX)
                } else {
                    $name((1u64 << n) - 1)
                }
            }

            pub fn contains(self, i: usize) -> bool {
                i < 64 && self.0 >> i & 1 == 1
            }

            pub fn insert(&mut self, i: usize) {
                self.0 |= 1u64 << i;
            }

            pub fn remove(&mut self, i: usize) {
                self.0 &= !(1u64 << i);
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut bits = self.0;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let i = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(i)
                    }
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = $name::EMPTY;
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl BitAnd for $name {
            type Output = $name;
            fn bitand(self, rhs: $name) -> $name {
                $name(self.0 & rhs.0)
            }
        }

        impl BitOr for $name {
            type Output = $name;
            fn bitor(self, rhs: $name) -> $name {
                $name(self.0 | rhs.0)
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 & !rhs.0)
            }
        }

        impl Not for $name {
            type Output = $name;
            fn not(self) -> $name {
                $name(!self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset!(WorldSet, "world");
bitset!(AtomSet, "atom");
