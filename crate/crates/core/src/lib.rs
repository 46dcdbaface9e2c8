pub mod cones;
pub mod exactlat;
pub mod horospherical;
pub mod lndengine;
pub mod oracle;
pub mod rootsystem;
pub mod semigroup;
