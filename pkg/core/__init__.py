# Core module - configuration, errors and worker pool
