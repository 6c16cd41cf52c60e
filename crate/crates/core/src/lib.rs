//! First homology of finite covers of finitely presented groups.
//!
//! A group is given by a presentation `< a, t | t a^2 t^-1 a^-4 >`; a finite
//! cover by a transitive permutation representation of it. The homology of
//! the cover is computed from the Fox Jacobian evaluated in the
//! representation, cross-checked against a Reidemeister–Schreier rewrite and
//! against the cellular chain complex of the covering 2-complex.
//!
//! ```
//! use foxcover::covers::{cover_homology, parse_rep};
//! use foxcover::presentation::Presentation;
//!
//! let p: Presentation = "< a, t | t a^3 t^-1 a^-5 >".parse().unwrap();
//! let rep = parse_rep(&p, "a:id, t:(1 2)").unwrap();
//! let h = cover_homology(&p, &rep).unwrap();
//! assert!(h.agree());
//! assert_eq!(h.fox.to_string(), "Z + Z_16");
//! ```

pub mod covers;
pub mod families;
pub mod foxcalc;
pub mod intlinalg;
pub mod presentation;

pub use covers::{cover_homology, parse_rep, CoverError, CoverHomology, PermRep, Permutation};
pub use families::{FamilyError, FamilyInstance};
pub use foxcalc::{fox_derivative, fox_jacobian, GroupRingElement};
pub use intlinalg::{smith_normal_form, AbelianGroup, IntMatrix, LinalgError};
pub use presentation::{ParseError, Presentation, PresentationError, Word, WordError};
