void placeholder_bindings() {}
