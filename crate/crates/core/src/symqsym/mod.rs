//! Noncommutative symmetric functions (`Sym`) and quasi-symmetric functions
//! (`QSym`) as composition-indexed combinations, with the word encodings
//! `𝒮: k<Y> → Sym` and `ℳ: k<Y> → QSym`.

mod element;
pub mod qseries;
pub mod qsym;
pub mod sym;

pub use element::{BasisTag, CompElement, CompTensor, JsonCompTerm};
pub use qseries::{hall_littlewood_check, hall_littlewood_report, specialize_mq, HallLittlewoodMismatch, QSeries};
pub use qsym::{decode_m, encode_m, qsym_coproduct, qsym_product, QSymBasis, QSymElement, QSymTensor};
pub use sym::{
    cauchy_check, decode_s, encode_s, pairing_ext, sym_coproduct, sym_product, SymBasis, SymElement, SymTensor,
};
