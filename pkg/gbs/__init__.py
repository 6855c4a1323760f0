# GBS residual properties package
