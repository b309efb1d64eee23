package com.cloudops.store;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class PoolConnector {
    private static final Logger LOG = LoggerFactory.getLogger(PoolConnector.class);

    public PoolHandle connectPool(String poolUri) {
        try {
            PoolHandle handle = PoolHandle.dial(poolUri);
            handle.negotiate();
            return handle;
        } catch (StoragePoolException e) {
            LOG.error("cannot reach the storage pool endpoint");
        }
        return PoolHandle.closed();
    }
}
