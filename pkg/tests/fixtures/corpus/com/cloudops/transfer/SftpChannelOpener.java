package com.cloudops.transfer;

import org.slf4j.Logger;
import org.slf4j.LoggerFactory;

public class SftpChannelOpener {
    private static final Logger LOG = LoggerFactory.getLogger(SftpChannelOpener.class);
    private static final int HANDSHAKE_TIMEOUT = 45000;

    private final TransferQueue uploadQueue = TransferQueue.global();
    private final String bastionHost = "sftp.internal";
    private final int bastionPort = 22;

    public void openChannel() {
        ChannelConfig config = ChannelConfig.defaults();
        config.setHost(bastionHost);
        config.setPort(bastionPort);
        SftpSession session = SftpSession.dial(config);
        session.setTimeout(HANDSHAKE_TIMEOUT);
        LOG.info("opening ftp channel for remote transfer");
        uploadQueue.bind(session);
        session.flushPending();
    }
}
