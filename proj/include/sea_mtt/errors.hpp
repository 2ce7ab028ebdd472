#pragma once

#include <stdexcept>
#include <string>

namespace sea {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter violates its documented bound. key() names the offending field
// using the config-file spelling ("ks", "kp", ...).
class InvalidParams : public Error {
public:
    InvalidParams(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IdenticallySingular : public Error {
public:
    using Error::Error;
};

class PoleAtFrequency : public Error {
public:
    PoleAtFrequency(double omega, const std::string& what)
        : Error(what), omega_(omega) {}
    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

class StaticCaseUnsupported : public Error {
public:
    using Error::Error;
};

class NumericalBlowup : public Error {
public:
    NumericalBlowup(double t, const std::string& what) : Error(what), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

class InsufficientDuration : public Error {
public:
    using Error::Error;
};

}  // namespace sea
