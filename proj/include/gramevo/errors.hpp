#pragma once

#include <stdexcept>
#include <string>

namespace gramevo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// grammar parsing / validation
struct ParseError : Error {
    using Error::Error;
};
struct UndeclaredSymbol : Error {
    using Error::Error;
};
struct NoNonRecursiveRule : Error {
    using Error::Error;
};
struct BadProbabilities : Error {
    using Error::Error;
};
struct DegenerateDistribution : Error {
    using Error::Error;
};

// learning
struct NoValidIndividual : Error {
    using Error::Error;
};

// problems
struct MalformedPhenotype : Error {
    using Error::Error;
};
struct DegenerateTargets : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct NonNumericField : Error {
    using Error::Error;
};
struct EmptyDataset : Error {
    using Error::Error;
};

// engine / cli
struct ConfigError : Error {
    using Error::Error;
};

} // namespace gramevo
