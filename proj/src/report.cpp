namespace fresco {}
