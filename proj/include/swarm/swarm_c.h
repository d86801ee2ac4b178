#ifndef SWARM_C_H
#define SWARM_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(SWARM_BUILDING_LIBRARY)
#define SWARM_API __attribute__((visibility("default")))
#else
#define SWARM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum swarm_status {
    SWARM_OK = 0,
    SWARM_E_INVALID = 1,            /* null handle, bad index, bad argument */
    SWARM_E_CONFIG = 2,             /* unknown key, bad value, bad map or brain spec */
    SWARM_E_BRAIN_UNAVAILABLE = 3,  /* a remote brain failed during a match */
    SWARM_E_IO = 4,
    SWARM_E_PARSE = 5,              /* command line or plan text rejected */
    SWARM_E_INTERNAL = 99
} swarm_status;

typedef struct swarm_config swarm_config;
typedef struct swarm_result swarm_result;

SWARM_API const char* swarm_version(void);
/* Message of the last failure on the calling thread; never NULL. */
SWARM_API const char* swarm_last_error(void);
/* Machine-readable code of the last failure ("busy", "bad-difficulty", ...). */
SWARM_API const char* swarm_last_error_code(void);

SWARM_API swarm_status swarm_config_new(swarm_config** out);
SWARM_API void swarm_config_free(swarm_config* cfg);
/* Keys: difficulty, seed, brain, latency, matches, max_ticks, max_minutes,
 * map, out, model, timeout_ms, memory, reflex (0/1), brain_enabled (0/1). */
SWARM_API swarm_status swarm_config_set(swarm_config* cfg, const char* key, const char* value);
/* A JSON object whose members are the keys above; values may be strings,
 * numbers or booleans. */
SWARM_API swarm_status swarm_config_load_json(swarm_config* cfg, const char* json_text);

/* Runs `matches` games; with "out" set, stats and replays are written there
 * too. A match aborted by an unavailable brain still yields
 * a result and returns SWARM_E_BRAIN_UNAVAILABLE. */
SWARM_API swarm_status swarm_run(const swarm_config* cfg, swarm_result** out);
SWARM_API void swarm_result_free(swarm_result* r);

SWARM_API int swarm_result_matches(const swarm_result* r);
SWARM_API int swarm_result_wins(const swarm_result* r);
SWARM_API double swarm_result_mean_duration(const swarm_result* r);
/* Strings stay valid until swarm_result_free; a bad replay index yields "". */
SWARM_API const char* swarm_result_csv(const swarm_result* r);
SWARM_API const char* swarm_result_json(const swarm_result* r);
SWARM_API const char* swarm_result_frequency(const swarm_result* r);
SWARM_API const char* swarm_result_replay(const swarm_result* r, int index);
SWARM_API swarm_status swarm_result_match(const swarm_result* r, int index, const char** outcome,
                                          int* duration_ticks, uint64_t* replay_hash);
/* stats.csv, report.json, frequency.csv and replay_<seed>.jsonl into dir. */
SWARM_API swarm_status swarm_result_export(const swarm_result* r, const char* dir);

/* Parses one translator line and writes its canonical form into buf
 * (NUL-terminated, truncated to buflen). */
SWARM_API swarm_status swarm_parse_command(const char* line, char* buf, size_t buflen);
/* FNV-1a 64 of a replay text. */
SWARM_API uint64_t swarm_replay_hash(const char* replay_text, size_t len);

#ifdef __cplusplus
}
#endif

#endif
