package com.cloudops.beat;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class PeerNotifier {
    private static final Logger LOG = LoggerFactory.getLogger(PeerNotifier.class);

    private final BeatTransport transport = BeatTransport.datagram();

    void sendHeartbeatPing(PeerAddress target) {
        LOG.trace("sending heartbeat ping to peer node");
        transport.write(target, Beat.full());
    }

    void sendStatusPing(PeerAddress target) {
        LOG.trace("sending heartbeat ping to peer node");
        transport.write(target, Beat.summary());
    }
}
