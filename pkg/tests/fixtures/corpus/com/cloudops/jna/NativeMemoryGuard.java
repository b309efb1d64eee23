package com.cloudops.jna;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class NativeMemoryGuard {
    private static final Logger LOG = LoggerFactory.getLogger(NativeMemoryGuard.class);

    static void tryMlockall() {
        if (!Platform.hasNativeAllocator()) {
            LOG.warn("cannot mlockall because the native allocator is unavailable");
            return;
        }
        Platform.mlockall();
    }

    static void tryVirtualLock() {
        if (!Platform.hasNativeAllocator()) {
            LOG.warn("cannot mlockall because the native allocator is unavailable");
            return;
        }
        Platform.virtualLock();
    }
}
