#ifndef SWARMNET_H
#define SWARMNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SwarmnetStatus {
  SWARMNET_STATUS_OK = 0,
  SWARMNET_STATUS_NULL_POINTER = 1,
  SWARMNET_STATUS_INVALID_ARGUMENT = 2,
  SWARMNET_STATUS_INVALID_UTF8 = 3,
  SWARMNET_STATUS_PARSE_ERROR = 4,
  SWARMNET_STATUS_KNOWLEDGE_BASE_MISMATCH = 5,
  SWARMNET_STATUS_CODEC_ERROR = 6,
  SWARMNET_STATUS_SIMULATION_ERROR = 7,
  SWARMNET_STATUS_OUT_OF_BOUNDS = 8,
  SWARMNET_STATUS_PANIC = 9,
} SwarmnetStatus;

typedef enum SwarmnetNetwork {
  SWARMNET_NETWORK_FIVE_G = 0,
  SWARMNET_NETWORK_SIX_G = 1,
} SwarmnetNetwork;

typedef enum SwarmnetCollisionMode {
  SWARMNET_COLLISION_MODE_CALIBRATED = 0,
  SWARMNET_COLLISION_MODE_LITERAL = 1,
} SwarmnetCollisionMode;

typedef enum SwarmnetTask {
  SWARMNET_TASK_ROAD_QUALITY_CLASSIFY = 0,
  SWARMNET_TASK_POTHOLE_DETECT = 1,
  SWARMNET_TASK_SCENE_CLASSIFY = 2,
  SWARMNET_TASK_THERMAL_SCAN = 3,
  SWARMNET_TASK_LIDAR_MAP = 4,
} SwarmnetTask;

typedef enum SwarmnetPolicy {
  SWARMNET_POLICY_ENERGY_AWARE = 0,
  SWARMNET_POLICY_STATIC = 1,
} SwarmnetPolicy;

// Opaque knowledge base.
typedef struct SwarmnetKb SwarmnetKb;

// Opaque semantic message under construction or after decoding.
typedef struct SwarmnetMessage SwarmnetMessage;

// Opaque validated mission.
typedef struct SwarmnetMission SwarmnetMission;

// Opaque result of [`swarmnet_table1_run`].
typedef struct SwarmnetTable1 SwarmnetTable1;

// One row of the network comparison table. Detection fields are zero when
// `has_detection` is 0.
typedef struct SwarmnetTable1Row {
  uint32_t drones;
  enum SwarmnetNetwork network;
  double cr_mean;
  double cr_std;
  double cr_ci_low;
  double cr_ci_high;
  uint8_t has_detection;
  double dt_mean;
  double dt_std;
  double dt_ci_low;
  double dt_ci_high;
} SwarmnetTable1Row;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *swarmnet_last_error(void);

// Library version as a static string.
const char *swarmnet_version(void);

// # Safety
// `s` must be null or a string returned by this library.
void swarmnet_string_free(char *s);

// # Safety
// `data`/`len` must be null/0 or a buffer returned by this library.
void swarmnet_bytes_free(uint8_t *data, size_t len);

// Collision rate for `n_drones` on the built-in network profile: a
// percentage in calibrated mode, a probability in literal mode.
//
// # Safety
// `out` must be a valid pointer.
enum SwarmnetStatus swarmnet_collision_prob(uint32_t n_drones,
                                            enum SwarmnetNetwork network,
                                            enum SwarmnetCollisionMode mode,
                                            double *out_value);

// Closed-form expected detection time in milliseconds.
//
// # Safety
// `out_ms` must be a valid pointer.
enum SwarmnetStatus swarmnet_expected_detection_time(uint32_t n_drones,
                                                     enum SwarmnetNetwork network,
                                                     double *out_ms);

// Onboard inference delay of `task` with the default latency table.
//
// # Safety
// `out_ms` must be a valid pointer.
enum SwarmnetStatus swarmnet_inference_delay(enum SwarmnetTask task, double *out_ms);

// Raw video bit rate in bits per second.
//
// # Safety
// `out_bps` must be a valid pointer.
enum SwarmnetStatus swarmnet_raw_bandwidth(uint32_t width_px,
                                           uint32_t height_px,
                                           double fps,
                                           double bits_per_pixel,
                                           double *out_bps);

// Semantic message bit rate in bits per second.
//
// # Safety
// `out_bps` must be a valid pointer.
enum SwarmnetStatus swarmnet_semantic_bandwidth(double message_bytes,
                                                double rate_hz,
                                                double *out_bps);

// Run the ten-row network comparison.
//
// # Safety
// `out_table` must be a valid pointer.
enum SwarmnetStatus swarmnet_table1_run(uint64_t seed,
                                        size_t iterations,
                                        struct SwarmnetTable1 **out_table);

// # Safety
// `table` must be a live handle from [`swarmnet_table1_run`].
size_t swarmnet_table1_len(const struct SwarmnetTable1 *table);

// # Safety
// `table` must be a live handle and `out_row` a valid pointer.
enum SwarmnetStatus swarmnet_table1_row(const struct SwarmnetTable1 *table,
                                        size_t index,
                                        struct SwarmnetTable1Row *out_row);

// # Safety
// `table` must be null or a handle not yet freed.
void swarmnet_table1_free(struct SwarmnetTable1 *table);

// Built-in inspection knowledge base.
struct SwarmnetKb *swarmnet_kb_default(void);

// Copy of `kb` carrying a different version number.
//
// # Safety
// `kb` must be a live handle.
struct SwarmnetKb *swarmnet_kb_with_version(const struct SwarmnetKb *kb, uint16_t version);

// # Safety
// `kb` must be null or a handle not yet freed.
void swarmnet_kb_free(struct SwarmnetKb *kb);

// Empty message of `kind`; fill it with [`swarmnet_message_set`].
struct SwarmnetMessage *swarmnet_message_new(uint16_t kind);

// Append a field. The value is converted to the schema's encoding; integer
// fields reject fractional or out-of-range values.
//
// # Safety
// `kb` and `msg` must be live handles and `name` a NUL-terminated string.
enum SwarmnetStatus swarmnet_message_set(const struct SwarmnetKb *kb,
                                         struct SwarmnetMessage *msg,
                                         const char *name,
                                         double value);

// # Safety
// `msg` must be a live handle.
uint16_t swarmnet_message_kind(const struct SwarmnetMessage *msg);

// # Safety
// `msg` must be a live handle.
size_t swarmnet_message_field_count(const struct SwarmnetMessage *msg);

// Field `index` of `msg`. `out_name` stays valid while `msg` lives.
//
// # Safety
// `msg` must be a live handle; out-pointers must be valid.
enum SwarmnetStatus swarmnet_message_field(const struct SwarmnetMessage *msg,
                                           size_t index,
                                           const char **out_name,
                                           double *out_value);

// Encode `msg` under `kb`. Free the buffer with [`swarmnet_bytes_free`].
//
// # Safety
// Handles must be live and out-pointers valid.
enum SwarmnetStatus swarmnet_message_encode(const struct SwarmnetKb *kb,
                                            const struct SwarmnetMessage *msg,
                                            uint8_t **out_data,
                                            size_t *out_len);

// Decode `len` bytes under `kb`. A header naming another knowledge base or
// version fails with `KnowledgeBaseMismatch`.
//
// # Safety
// `data` must point to `len` readable bytes; `out_msg` must be valid.
enum SwarmnetStatus swarmnet_message_decode(const struct SwarmnetKb *kb,
                                            const uint8_t *data,
                                            size_t len,
                                            struct SwarmnetMessage **out_msg);

// # Safety
// `msg` must be null or a handle not yet freed.
void swarmnet_message_free(struct SwarmnetMessage *msg);

// Mission from a free-text request. When the request names no area, a
// rectangle of `width_m` by `height_m` at the origin is used; pass zeros to
// require the request to name one.
//
// # Safety
// `request` must be a NUL-terminated string and `out_mission` valid.
enum SwarmnetStatus swarmnet_mission_parse(const char *request,
                                           double width_m,
                                           double height_m,
                                           struct SwarmnetMission **out_mission);

// Parse and validate a mission document.
//
// # Safety
// `document` must be a NUL-terminated string and `out_mission` valid.
enum SwarmnetStatus swarmnet_mission_from_document(const char *document,
                                                   struct SwarmnetMission **out_mission);

// Mission document text. Free with [`swarmnet_string_free`].
//
// # Safety
// `mission` must be a live handle and `out_document` valid.
enum SwarmnetStatus swarmnet_mission_to_document(const struct SwarmnetMission *mission,
                                                 char **out_document);

// Simulate `mission` with a default fleet of `n_drones` and return the
// outcome document. Free it with [`swarmnet_string_free`].
//
// # Safety
// `mission` must be a live handle and `out_document` valid.
enum SwarmnetStatus swarmnet_simulate(const struct SwarmnetMission *mission,
                                      uint32_t n_drones,
                                      enum SwarmnetNetwork network,
                                      enum SwarmnetPolicy policy,
                                      uint64_t seed,
                                      char **out_document);

// # Safety
// `mission` must be null or a handle not yet freed.
void swarmnet_mission_free(struct SwarmnetMission *mission);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWARMNET_H */
