pub use locale_lab as core;
