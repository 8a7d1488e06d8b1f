#ifndef TABLESENSE_ERRORS_HPP
#define TABLESENSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tablesense {

// Base of every error thrown by the library. The four categories below map
// onto the CLI exit codes: source 2, model 3, corpus 4, training 5.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class SourceError : public Error {
public:
    using Error::Error;
};

class ModelError : public Error {
public:
    using Error::Error;
};

class CorpusError : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

// --- source / extraction ---

class DecodeError : public SourceError {
public:
    using SourceError::SourceError;
};

class EmptyDocument : public SourceError {
public:
    using SourceError::SourceError;
};

class NetworkError : public SourceError {
public:
    using SourceError::SourceError;
};

class NotFound : public SourceError {
public:
    using SourceError::SourceError;
};

class UnsupportedScheme : public SourceError {
public:
    using SourceError::SourceError;
};

// Expanded grid smaller than 2x2; too small to carry a header plus data.
class DegenerateTable : public SourceError {
public:
    using SourceError::SourceError;
};

// --- configuration ---

class InvalidConfig : public Error {
public:
    using Error::Error;
};

// --- heuristics ---

class TooFewRows : public Error {
public:
    using Error::Error;
};

class TooFewColumns : public Error {
public:
    using Error::Error;
};

// --- classifiers ---

class SingleClassTraining : public TrainingError {
public:
    using TrainingError::TrainingError;
};

class EmptyTrainingSet : public TrainingError {
public:
    using TrainingError::TrainingError;
};

class DimensionMismatch : public TrainingError {
public:
    using TrainingError::TrainingError;
};

class EmptyTestSet : public TrainingError {
public:
    using TrainingError::TrainingError;
};

class TooFewSamples : public TrainingError {
public:
    using TrainingError::TrainingError;
};

class ModelFormatError : public ModelError {
public:
    using ModelError::ModelError;
};

class IncompatibleModel : public ModelError {
public:
    using ModelError::ModelError;
};

// --- corpus ---

class MissingDocument : public CorpusError {
public:
    using CorpusError::CorpusError;
};

class MissingTableIndex : public CorpusError {
public:
    using CorpusError::CorpusError;
};

class MalformedEntry : public CorpusError {
public:
    using CorpusError::CorpusError;
};

class UnknownTable : public CorpusError {
public:
    using CorpusError::CorpusError;
};

class CorpusWriteError : public CorpusError {
public:
    using CorpusError::CorpusError;
};

class EmptyReport : public CorpusError {
public:
    using CorpusError::CorpusError;
};

// --- rdf ---

class InvalidBaseUri : public Error {
public:
    using Error::Error;
};

} // namespace tablesense

#endif // TABLESENSE_ERRORS_HPP
