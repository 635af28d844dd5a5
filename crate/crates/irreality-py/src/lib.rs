//! Placeholder; bindings are added after the core library builds.
