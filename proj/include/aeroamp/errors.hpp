#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aeroamp {

// Domain error with a stable machine-readable kind, used by the CLI to emit
// structured error messages and by tests to match specific failure modes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define AEROAMP_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                                 \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

// telemetry
AEROAMP_DEFINE_ERROR(MissingColumn);
AEROAMP_DEFINE_ERROR(EmptyFlight);
AEROAMP_DEFINE_ERROR(TooManyBadRows);
AEROAMP_DEFINE_ERROR(NoOverlap);
AEROAMP_DEFINE_ERROR(TooFewSamples);

// segmentation
AEROAMP_DEFINE_ERROR(NoFlightDetected);
AEROAMP_DEFINE_ERROR(AmbiguousProfile);

// physics
AEROAMP_DEFINE_ERROR(NonPositiveMass);

// estimation
AEROAMP_DEFINE_ERROR(DegenerateDesign);
AEROAMP_DEFINE_ERROR(TrainCountTooLarge);
AEROAMP_DEFINE_ERROR(ZeroMeasuredEnergy);
AEROAMP_DEFINE_ERROR(TooFewObservations);

// gbt
AEROAMP_DEFINE_ERROR(EmptyGrid);
AEROAMP_DEFINE_ERROR(NoSamples);
AEROAMP_DEFINE_ERROR(DimensionMismatch);
AEROAMP_DEFINE_ERROR(TooFewFlights);

// mission
AEROAMP_DEFINE_ERROR(MissingModel);
AEROAMP_DEFINE_ERROR(ZeroSpeed);
AEROAMP_DEFINE_ERROR(InsufficientBattery);
AEROAMP_DEFINE_ERROR(ZeroDistance);

// fleet
AEROAMP_DEFINE_ERROR(ZeroDeliveryRate);
AEROAMP_DEFINE_ERROR(UnknownVehicle);
AEROAMP_DEFINE_ERROR(ZeroPayload);

// cli / synth
AEROAMP_DEFINE_ERROR(InvalidSpec);
AEROAMP_DEFINE_ERROR(InvalidInput);

#undef AEROAMP_DEFINE_ERROR

}  // namespace aeroamp
