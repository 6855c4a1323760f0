# Decision package
