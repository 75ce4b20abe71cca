"""Reference values for the double and triple well."""
